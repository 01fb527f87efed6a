#include "latkit/congruence.hpp"

#include "latkit/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>

namespace latkit {

namespace {

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Id{0}); }

    Id find(Id x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(Id x, Id y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (x < y) std::swap(x, y);
        parent_[x] = y;
        return true;
    }

    Congruence partition() {
        std::vector<Id> b(parent_.size());
        for (Id x = 0; x < b.size(); ++x) b[x] = find(x);
        return Congruence(b);
    }

  private:
    std::vector<Id> parent_;
};

}  // namespace

Congruence::Congruence(const std::vector<Id>& block_of) : block_of_(block_of.size()) {
    std::unordered_map<Id, Id> relabel;
    for (std::size_t x = 0; x < block_of.size(); ++x) {
        auto [it, fresh] = relabel.emplace(block_of[x], static_cast<Id>(relabel.size()));
        block_of_[x] = it->second;
    }
    num_blocks_ = relabel.size();
}

Congruence Congruence::from_blocks(std::size_t n, const std::vector<std::vector<Id>>& blocks) {
    std::vector<Id> b(n, static_cast<Id>(-1));
    Id next = 0;
    for (const auto& blk : blocks) {
        for (Id x : blk) {
            if (x >= n || b[x] != static_cast<Id>(-1)) throw FormatError("blocks do not form a partition");
            b[x] = next;
        }
        ++next;
    }
    for (Id& v : b) {
        if (v == static_cast<Id>(-1)) throw FormatError("blocks do not cover every element");
    }
    return Congruence(b);
}

Congruence Congruence::identity(std::size_t n) {
    std::vector<Id> b(n);
    std::iota(b.begin(), b.end(), Id{0});
    return Congruence(b);
}

Congruence Congruence::full(std::size_t n) { return Congruence(std::vector<Id>(n, 0)); }

std::vector<std::vector<Id>> Congruence::blocks() const {
    std::vector<std::vector<Id>> out(num_blocks_);
    for (Id x = 0; x < size(); ++x) out[block_of_[x]].push_back(x);
    return out;
}

bool Congruence::refines(const Congruence& other) const {
    std::vector<Id> image(num_blocks_, static_cast<Id>(-1));
    for (Id x = 0; x < size(); ++x) {
        Id& slot = image[block_of_[x]];
        if (slot == static_cast<Id>(-1)) {
            slot = other.block_of_[x];
        } else if (slot != other.block_of_[x]) {
            return false;
        }
    }
    return true;
}

std::string Congruence::label() const {
    std::string out;
    for (const auto& blk : blocks()) {
        if (!out.empty()) out += "|";
        for (std::size_t i = 0; i < blk.size(); ++i) out += (i ? "," : "") + std::to_string(blk[i]);
    }
    return out;
}

std::size_t CongruenceHash::operator()(const Congruence& c) const {
    std::size_t h = 1469598103934665603ULL;
    for (Id v : c.block_of()) h = (h ^ v) * 1099511628211ULL;
    return h;
}

Congruence join(const Congruence& x, const Congruence& y) {
    DisjointSets ds(x.size());
    std::vector<Id> first_x(x.num_blocks(), static_cast<Id>(-1)), first_y(y.num_blocks(), static_cast<Id>(-1));
    for (Id e = 0; e < x.size(); ++e) {
        Id& fx = first_x[x.block(e)];
        if (fx == static_cast<Id>(-1)) fx = e; else ds.unite(fx, e);
        Id& fy = first_y[y.block(e)];
        if (fy == static_cast<Id>(-1)) fy = e; else ds.unite(fy, e);
    }
    return ds.partition();
}

Congruence meet(const Congruence& x, const Congruence& y) {
    std::vector<Id> b(x.size());
    for (Id e = 0; e < x.size(); ++e) b[e] = static_cast<Id>(x.block(e) * y.num_blocks() + y.block(e));
    return Congruence(b);
}

Congruence congruence_generated(const FiniteLattice& l, const std::vector<std::pair<Id, Id>>& pairs) {
    const Id n = static_cast<Id>(l.size());
    DisjointSets ds(n);
    std::vector<std::pair<Id, Id>> work(pairs.begin(), pairs.end());
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        if (!ds.unite(a, b)) continue;
        // Translates of every merged pair; together with transitivity this closes under all
        // unary polynomials.
        for (Id z = 0; z < n; ++z) {
            const Id ja = l.join(a, z), jb = l.join(b, z);
            if (ja != jb) work.emplace_back(ja, jb);
            const Id ma = l.meet(a, z), mb = l.meet(b, z);
            if (ma != mb) work.emplace_back(ma, mb);
        }
    }
    return ds.partition();
}

Congruence congruence_generated(const FiniteLattice& l, const Congruence& seed) {
    std::vector<std::pair<Id, Id>> pairs;
    std::vector<Id> first(seed.num_blocks(), static_cast<Id>(-1));
    for (Id x = 0; x < seed.size(); ++x) {
        Id& f = first[seed.block(x)];
        if (f == static_cast<Id>(-1)) f = x; else pairs.emplace_back(f, x);
    }
    return congruence_generated(l, pairs);
}

Congruence principal_congruence(const FiniteLattice& l, Id a, Id b) {
    return congruence_generated(l, std::vector<std::pair<Id, Id>>{{a, b}});
}

bool is_congruence(const FiniteLattice& l, const Congruence& c) {
    if (c.size() != l.size()) return false;
    const Id n = static_cast<Id>(l.size());
    std::vector<Id> rep(c.num_blocks(), static_cast<Id>(-1));
    for (Id x = 0; x < n; ++x) {
        Id& r = rep[c.block(x)];
        if (r == static_cast<Id>(-1)) {
            r = x;
            continue;
        }
        for (Id z = 0; z < n; ++z) {
            if (!c.same(l.join(x, z), l.join(r, z)) || !c.same(l.meet(x, z), l.meet(r, z))) return false;
        }
    }
    return true;
}

std::optional<Id> ConLattice::find(const Congruence& c) const {
    auto it = std::lower_bound(congruences.begin(), congruences.end(), c,
                               [](const Congruence& x, const Congruence& y) {
                                   if (x.num_blocks() != y.num_blocks()) return x.num_blocks() > y.num_blocks();
                                   return x < y;
                               });
    if (it == congruences.end() || !(*it == c)) return std::nullopt;
    return static_cast<Id>(it - congruences.begin());
}

std::vector<Congruence> join_irreducible_congruences(const FiniteLattice& l) {
    std::vector<Congruence> out;
    std::unordered_map<Congruence, bool, CongruenceHash> seen;
    for (const auto& j : join_irreducibles(l)) {
        auto c = principal_congruence(l, j.cover, j.element);
        if (seen.emplace(c, true).second) out.push_back(std::move(c));
    }
    return out;
}

namespace {

using CacheKey = std::pair<std::size_t, std::vector<std::pair<Id, Id>>>;

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<CacheKey, ConLattice>& cache() {
    static std::map<CacheKey, ConLattice> c;
    return c;
}

ConLattice compute_con_lattice(const FiniteLattice& l, const Limits& lim) {
    const auto jis = join_irreducible_congruences(l);
    std::unordered_map<Congruence, bool, CongruenceHash> seen;
    std::vector<Congruence> found{Congruence::identity(l.size())};
    seen.emplace(found.front(), true);
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const auto& j : jis) {
            if (j.refines(found[i])) continue;
            auto next = join(found[i], j);
            if (seen.emplace(next, true).second) {
                found.push_back(std::move(next));
                if (found.size() > lim.max_elements) {
                    throw SizeLimitExceeded("congruence lattice", lim.max_elements);
                }
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const Congruence& x, const Congruence& y) {
        if (x.num_blocks() != y.num_blocks()) return x.num_blocks() > y.num_blocks();
        return x < y;
    });
    ConLattice res;
    res.congruences = std::move(found);
    std::vector<std::string> labels;
    for (const auto& c : res.congruences) labels.push_back(c.label());
    const auto& cs = res.congruences;
    res.lattice = FiniteLattice::from_poset(
        FinitePoset::from_predicate(std::move(labels), [&](Id i, Id j) { return cs[i].refines(cs[j]); }),
        l.name().empty() ? "" : "Con(" + l.name() + ")");
    res.simple = res.congruences.size() == 2;
    for (const auto& j : jis) res.join_irreducibles.push_back(*res.find(j));
    std::sort(res.join_irreducibles.begin(), res.join_irreducibles.end());
    return res;
}

}  // namespace

ConLattice con_lattice(const FiniteLattice& l, const Limits& lim) {
    CacheKey key{l.size(), l.poset().covers()};
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache().find(key);
        if (it != cache().end()) {
            if (it->second.congruences.size() > lim.max_elements) {
                throw SizeLimitExceeded("congruence lattice", lim.max_elements);
            }
            return it->second;
        }
    }
    auto res = compute_con_lattice(l, lim);
    std::lock_guard<std::mutex> lock(cache_mutex());
    if (cache().size() > 4096) cache().clear();
    cache().emplace(std::move(key), res);
    return res;
}

Congruence box_relation(const PairGrid& grid, const std::vector<Bits>& sets, const Congruence& alpha,
                        const Congruence& beta) {
    const std::size_t ba = alpha.num_blocks(), bb = beta.num_blocks();
    // Saturation of a set under α×β; H ≡ K iff their saturations agree.
    std::vector<Bits> block_mask(ba * bb, grid.empty());
    for (Id x = 0; x < grid.a().size(); ++x) {
        for (Id y = 0; y < grid.b().size(); ++y) {
            block_mask[alpha.block(x) * bb + beta.block(y)].set(grid.index(x, y));
        }
    }
    std::unordered_map<Bits, Id, BitsHash> groups;
    std::vector<Id> b(sets.size());
    std::vector<bool> used(ba * bb);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::fill(used.begin(), used.end(), false);
        Bits sat = grid.empty();
        for_each_bit(sets[i], [&](Id p) {
            const std::size_t k = alpha.block(grid.first(p)) * bb + beta.block(grid.second(p));
            if (!used[k]) {
                used[k] = true;
                sat |= block_mask[k];
            }
        });
        b[i] = groups.emplace(std::move(sat), static_cast<Id>(groups.size())).first->second;
    }
    return Congruence(b);
}

Congruence cong_box_tensor(const TensorProduct& t, const Congruence& alpha, const Congruence& beta,
                           BoxKind which) {
    const auto& g = t.grid();
    if (alpha.size() != g.a().size() || beta.size() != g.b().size()) {
        throw FormatError("congruence does not match the tensor factors");
    }
    Congruence out;
    if (which == BoxKind::box) {
        out = box_relation(g, t.elements(), alpha, beta);
    } else {
        out = meet(box_relation(g, t.elements(), alpha, Congruence::identity(g.b().size())),
                   box_relation(g, t.elements(), Congruence::identity(g.a().size()), beta));
    }
    if (!is_congruence(t.lattice(), out)) throw NotACongruence("box relation is not a lattice congruence");
    return out;
}

GeneratorIsoReport check_generator_iso(const FiniteLattice& c, const ConLattice& ca, const ConLattice& cb,
                                       const std::function<Congruence(Id, Id)>& value) {
    GeneratorIsoReport rep;
    rep.targets = join_irreducible_congruences(c);
    std::unordered_map<Congruence, Id, CongruenceHash> index;
    for (Id i = 0; i < rep.targets.size(); ++i) index.emplace(rep.targets[i], i);

    const auto& ja = ca.join_irreducibles;
    const auto& jb = cb.join_irreducibles;
    rep.map.assign(ja.size(), std::vector<Id>(jb.size(), 0));
    std::vector<bool> hit(rep.targets.size(), false);
    for (std::size_t p = 0; p < ja.size(); ++p) {
        for (std::size_t q = 0; q < jb.size(); ++q) {
            const auto v = value(ja[p], jb[q]);
            if (!is_congruence(c, v)) {
                rep.failure = "image of a generator is not a congruence";
                return rep;
            }
            auto it = index.find(v);
            if (it == index.end()) {
                rep.failure = "image of " + ca.congruences[ja[p]].label() + " (x) " +
                              cb.congruences[jb[q]].label() + " is not join-irreducible";
                return rep;
            }
            if (hit[it->second]) {
                rep.failure = "map on generators is not injective";
                return rep;
            }
            hit[it->second] = true;
            rep.map[p][q] = it->second;
        }
    }
    if (ja.size() * jb.size() != rep.targets.size()) {
        rep.failure = "map on generators is not surjective onto J(Con C): " +
                      std::to_string(ja.size() * jb.size()) + " vs " + std::to_string(rep.targets.size());
        return rep;
    }
    for (std::size_t p = 0; p < ja.size(); ++p) {
        for (std::size_t q = 0; q < jb.size(); ++q) {
            for (std::size_t p2 = 0; p2 < ja.size(); ++p2) {
                for (std::size_t q2 = 0; q2 < jb.size(); ++q2) {
                    const bool src = ca.lattice.leq(ja[p], ja[p2]) && cb.lattice.leq(jb[q], jb[q2]);
                    const bool dst = rep.targets[rep.map[p][q]].refines(rep.targets[rep.map[p2][q2]]);
                    if (src != dst) {
                        rep.failure = "map on generators does not preserve and reflect the order";
                        return rep;
                    }
                }
            }
        }
    }
    rep.verdict = true;
    return rep;
}

namespace {

Congruence join_many(std::size_t n, const std::vector<const Congruence*>& parts) {
    DisjointSets ds(n);
    std::vector<Id> first;
    for (const auto* c : parts) {
        first.assign(c->num_blocks(), static_cast<Id>(-1));
        for (Id e = 0; e < n; ++e) {
            Id& f = first[c->block(e)];
            if (f == static_cast<Id>(-1)) f = e; else ds.unite(f, e);
        }
    }
    return ds.partition();
}

}  // namespace

GlqReport glq_isomorphism_check(const FiniteLattice& a, const FiniteLattice& b, const GlqOptions& opt) {
    GlqReport rep;
    const auto t = tensor_product(a, b, opt.limits);
    const auto& l = t.lattice();
    const auto& g = t.grid();
    rep.tensor_size = t.size();
    const auto ca = con_lattice(a, opt.limits);
    const auto cb = con_lattice(b, opt.limits);
    rep.con_a = ca.congruences.size();
    rep.con_b = cb.congruences.size();

    std::vector<Congruence> left, right;  // α□ω_B, ω_A□β
    for (const auto& c : ca.congruences) {
        left.push_back(box_relation(g, t.elements(), c, Congruence::identity(b.size())));
    }
    for (const auto& c : cb.congruences) {
        right.push_back(box_relation(g, t.elements(), Congruence::identity(a.size()), c));
    }
    auto odot = [&](Id i, Id j) { return meet(left[i], right[j]); };

    rep.generators = check_generator_iso(l, ca, cb, odot);
    rep.ji_targets = rep.generators.targets.size();
    if (!rep.generators.verdict) {
        rep.failure = rep.generators.failure;
        return rep;
    }

    // ε(α⊗β) = α⊙β on every pure tensor must agree with the join-extension of the generator values.
    const auto& ja = ca.join_irreducibles;
    const auto& jb = cb.join_irreducibles;
    std::vector<std::vector<Congruence>> value(ca.congruences.size(),
                                               std::vector<Congruence>(cb.congruences.size()));
    for (Id i = 0; i < ca.congruences.size(); ++i) {
        for (Id j = 0; j < cb.congruences.size(); ++j) {
            std::vector<const Congruence*> parts;
            for (std::size_t p = 0; p < ja.size(); ++p) {
                if (!ca.lattice.leq(ja[p], i)) continue;
                for (std::size_t q = 0; q < jb.size(); ++q) {
                    if (cb.lattice.leq(jb[q], j)) parts.push_back(&rep.generators.targets[rep.generators.map[p][q]]);
                }
            }
            value[i][j] = odot(i, j);
            if (!(value[i][j] == join_many(l.size(), parts))) {
                rep.failure = "alpha (.) beta differs from the join of its generator images at " +
                              ca.congruences[i].label() + " / " + cb.congruences[j].label();
                return rep;
            }
        }
    }

    if (ca.congruences.size() * cb.congruences.size() <= opt.full_route_max_pairs) {
        rep.full_route = true;
        Limits inner{ca.congruences.size() * cb.congruences.size(), opt.limits.max_elements};
        const auto ct = tensor_product(ca.lattice, cb.lattice, inner);
        const auto con_t = con_lattice(l, opt.limits);
        if (ct.size() != con_t.congruences.size()) {
            rep.failure = "|Con A (x) Con B| != |Con(A (x) B)|";
            return rep;
        }
        Rng rng(opt.seed);
        std::vector<Id> image(ct.size());
        std::vector<bool> hit(con_t.congruences.size(), false);
        for (Id e = 0; e < ct.size(); ++e) {
            const auto& members = ct.element(e);
            auto eval = [&](const std::vector<std::pair<Id, Id>>& gens) {
                std::vector<const Congruence*> parts;
                for (auto [x, y] : gens) parts.push_back(&value[x][y]);
                return join_many(l.size(), parts);
            };
            auto cs = caps(ct.grid(), {members});
            const auto img = eval(cs);
            const auto all = ct.grid().pairs(members);
            for (std::size_t s = 0; s < opt.samples; ++s) {
                auto alt = cs;
                const std::size_t extra = 1 + draw(rng, 3);
                for (std::size_t k = 0; k < extra; ++k) alt.push_back(all[draw(rng, all.size())]);
                if (!(eval(alt) == img)) {
                    rep.failure = "epsilon is not well defined on " + ct.lattice().label(e);
                    return rep;
                }
            }
            auto idx = con_t.find(img);
            if (!idx || hit[*idx]) {
                rep.failure = idx ? "epsilon is not injective" : "epsilon image is not a congruence";
                return rep;
            }
            hit[*idx] = true;
            image[e] = *idx;
        }
        for (Id x = 0; x < ct.size(); ++x) {
            for (Id y = 0; y < ct.size(); ++y) {
                if (ct.lattice().leq(x, y) != con_t.lattice.leq(image[x], image[y])) {
                    rep.failure = "epsilon does not preserve and reflect the order";
                    return rep;
                }
            }
        }
    }
    rep.verdict = true;
    return rep;
}

SubTensorVerdict is_sub_tensor_product(const TensorProduct& t, const std::vector<Bits>& family) {
    SubTensorVerdict v;
    const auto& g = t.grid();
    std::unordered_map<Bits, Id, BitsHash> index;
    for (Id i = 0; i < family.size(); ++i) {
        if (!t.find(family[i])) throw FormatError("family member is not an element of the tensor product");
        index.emplace(family[i], i);
    }
    for (const auto& m : family) {
        Bits u = g.empty();
        for (auto [x, y] : caps(g, {m})) u |= pure_tensor(g, x, y).members;
        v.capped.push_back(u == m);
    }
    v.all_capped = std::all_of(v.capped.begin(), v.capped.end(), [](bool c) { return c; });

    const auto& a = g.a();
    const auto& b = g.b();
    for (Id a0 = 0; a0 < a.size(); ++a0) {
        for (Id a1 = 0; a1 < a.size(); ++a1) {
            if (!a.leq(a0, a1)) continue;
            for (Id b0 = 0; b0 < b.size(); ++b0) {
                for (Id b1 = 0; b1 < b.size(); ++b1) {
                    if (!b.leq(b1, b0)) continue;
                    if (!index.count(mixed_tensor(g, a0, b0, a1, b1).members)) {
                        v.failed_axiom = 1;
                        v.detail = "missing mixed tensor <" + a.label(a0) + "," + b.label(b0) + "> u <" +
                                   a.label(a1) + "," + b.label(b1) + ">";
                        return v;
                    }
                }
            }
        }
    }
    for (const auto& x : family) {
        for (const auto& y : family) {
            if (!index.count(x & y)) {
                v.failed_axiom = 2;
                v.detail = "not closed under intersection";
                return v;
            }
        }
    }
    std::vector<std::string> labels(family.size());
    auto p = FinitePoset::from_predicate(std::move(labels),
                                         [&](Id i, Id j) { return family[i].is_subset_of(family[j]); });
    if (!is_lattice(p).lattice) {
        v.failed_axiom = 3;
        v.detail = "not a lattice under containment";
        return v;
    }
    v.verdict = true;
    return v;
}

namespace {

// Row x of α∘β: every z with x α y β z for some y.
std::vector<Bits> compose(const Congruence& alpha, const Congruence& beta) {
    const std::size_t n = alpha.size();
    std::vector<Bits> beta_block(beta.num_blocks(), Bits(n));
    for (Id x = 0; x < n; ++x) beta_block[beta.block(x)].set(x);
    std::vector<Bits> by_alpha(alpha.num_blocks(), Bits(n));
    for (Id y = 0; y < n; ++y) by_alpha[alpha.block(y)] |= beta_block[beta.block(y)];
    std::vector<Bits> rows(n);
    for (Id x = 0; x < n; ++x) rows[x] = by_alpha[alpha.block(x)];
    return rows;
}

}  // namespace

PermutabilityVerdict permutable(const FiniteLattice& l, const Limits& lim) {
    const auto cl = con_lattice(l, lim);
    const auto& cs = cl.congruences;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (compose(cs[i], cs[j]) != compose(cs[j], cs[i])) return {false, std::make_pair(cs[i], cs[j])};
        }
    }
    return {true, std::nullopt};
}

void validate_embedding(const FiniteLattice& l, const FiniteLattice& k, const std::vector<Id>& e) {
    if (e.size() != l.size()) throw NotAnEmbedding("map is not defined on every element");
    std::vector<bool> hit(k.size(), false);
    for (Id x : e) {
        if (x >= k.size()) throw NotAnEmbedding("map leaves the target lattice");
        if (hit[x]) throw NotAnEmbedding("map is not injective");
        hit[x] = true;
    }
    for (Id x = 0; x < l.size(); ++x) {
        for (Id y = 0; y < l.size(); ++y) {
            if (e[l.join(x, y)] != k.join(e[x], e[y])) throw NotAnEmbedding("map does not preserve joins");
            if (e[l.meet(x, y)] != k.meet(e[x], e[y])) throw NotAnEmbedding("map does not preserve meets");
        }
    }
}

CongPreservingVerdict cong_preserving_check(const FiniteLattice& l, const FiniteLattice& k,
                                            const std::vector<Id>& e, const Limits& lim) {
    validate_embedding(l, k, e);
    const auto ck = con_lattice(k, lim);
    const auto cl = con_lattice(l, lim);
    std::vector<std::size_t> count(cl.congruences.size(), 0);
    for (const auto& theta : ck.congruences) {
        std::vector<Id> b(l.size());
        for (Id x = 0; x < l.size(); ++x) b[x] = theta.block(e[x]);
        auto idx = cl.find(Congruence(b));
        if (!idx) return {false, "restriction of " + theta.label() + " is not a congruence"};
        ++count[*idx];
    }
    for (Id i = 0; i < count.size(); ++i) {
        if (count[i] != 1) {
            return {false, "congruence " + cl.congruences[i].label() + " has " + std::to_string(count[i]) +
                               " extensions"};
        }
    }
    return {true, {}};
}

}  // namespace latkit
