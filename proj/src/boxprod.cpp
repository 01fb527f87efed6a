#include "latkit/boxprod.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

#include "latkit/catalog.hpp"
#include "latkit/isomorphism.hpp"
#include "latkit/tensor.hpp"

namespace latkit {

Bits box_set(const PairGrid& g, Id a, Id b) {
    Bits s = g.empty();
    for (Id x = 0; x < g.a().size(); ++x) {
        const bool left = g.a().leq(x, a);
        for (Id y = 0; y < g.b().size(); ++y) {
            if (left || g.b().leq(y, b)) s.set(g.index(x, y));
        }
    }
    return s;
}

Bits circ_set(const PairGrid& g, Id c, Id d) { return g.down_box(c, d); }

Bits bottom_set(const PairGrid& g, BoundFlags fa, BoundFlags fb) {
    Bits s = g.empty();
    if (fb.zero) {
        for (Id x = 0; x < g.a().size(); ++x) s.set(g.index(x, g.b().zero()));
    }
    if (fa.zero) {
        for (Id y = 0; y < g.b().size(); ++y) s.set(g.index(g.a().zero(), y));
    }
    return s;
}

Bits boxtimes_set(const PairGrid& g, Id a, Id b, BoundFlags fa, BoundFlags fb) {
    Bits s = bottom_set(g, fa, fb);
    s |= circ_set(g, a, b);
    return s;
}

BoxElement box_element(const PairGrid& g, const Bits& extent) {
    std::vector<std::pair<Id, Id>> cand;
    std::vector<Bits> sets;
    Bits all = g.full();
    for (Id a = 0; a < g.a().size(); ++a) {
        for (Id b = 0; b < g.b().size(); ++b) {
            Bits s = box_set(g, a, b);
            if (!extent.is_subset_of(s)) continue;
            all &= s;
            cand.emplace_back(a, b);
            sets.push_back(std::move(s));
        }
    }
    if (cand.empty() || all != extent) throw FormatError("set is not an intersection of box sets");
    std::vector<bool> kept(cand.size(), true);
    std::size_t remaining = cand.size();
    for (std::size_t i = 0; i < cand.size() && remaining > 1; ++i) {
        Bits rest = g.full();
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (k != i && kept[k]) rest &= sets[k];
        }
        if (rest == extent) {
            kept[i] = false;
            --remaining;
        }
    }
    BoxElement e;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (kept[i]) e.witness.push_back(cand[i]);
    }
    e.extent = extent;
    return e;
}

BoxdotElement boxdot_element(const PairGrid& g, std::vector<std::pair<Id, Id>> box_terms,
                             std::vector<std::pair<Id, Id>> circ_terms) {
    if (box_terms.empty()) throw FormatError("an A(.)B element needs at least one box term");
    BoxdotElement h{std::move(box_terms), std::move(circ_terms), g.empty()};
    for (auto [a, b] : h.box_terms) h.extent |= box_set(g, a, b);
    for (auto [c, d] : h.circ_terms) h.extent |= circ_set(g, c, d);
    return h;
}

BoxElement box_closure(const PairGrid& g, const BoxdotElement& h) {
    const auto& la = g.a();
    const auto& lb = g.b();
    const std::size_t n = h.circ_terms.size();
    if (n > 20) throw SizeLimitExceeded("circ terms in closure formula", 20);
    Id a_base = h.box_terms.front().first, b_base = h.box_terms.front().second;
    for (auto [a, b] : h.box_terms) {
        a_base = la.join(a_base, a);
        b_base = lb.join(b_base, b);
    }
    Bits out = g.full();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        Id ax = a_base, bx = b_base;
        for (std::size_t j = 0; j < n; ++j) {
            if (x >> j & 1) {
                ax = la.join(ax, h.circ_terms[j].first);
            } else {
                bx = lb.join(bx, h.circ_terms[j].second);
            }
        }
        out &= box_set(g, ax, bx);
    }
    return box_element(g, out);
}

SetLattice::SetLattice(PairGrid grid, std::vector<Bits> elements, std::vector<std::string> labels,
                       std::string name)
    : grid_(std::move(grid)), elements_(std::move(elements)) {
    for (Id i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    lattice_ = lattice_of_sets(elements_, std::move(labels), std::move(name));
}

std::optional<Id> SetLattice::find(const Bits& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string box_label(const PairGrid& g, const BoxElement& e) {
    std::string out;
    for (auto [a, b] : e.witness) {
        if (!out.empty()) out += " & ";
        out += g.a().label(a) + "[]" + g.b().label(b);
    }
    return out;
}

namespace {

void sort_sets(std::vector<Bits>& v) {
    std::sort(v.begin(), v.end(), [](const Bits& x, const Bits& y) {
        const auto cx = x.count(), cy = y.count();
        return cx != cy ? cx < cy : x < y;
    });
}

std::vector<std::string> box_labels(const PairGrid& g, const std::vector<Bits>& sets) {
    std::vector<std::string> labels;
    labels.reserve(sets.size());
    for (const auto& s : sets) labels.push_back(box_label(g, box_element(g, s)));
    return labels;
}

std::string joined_name(const FiniteLattice& a, const FiniteLattice& b, const std::string& op) {
    if (a.name().empty() || b.name().empty()) return {};
    return a.name() + op + b.name();
}

}  // namespace

SetLattice box_product(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim) {
    if (a.size() * b.size() > lim.max_pairs) {
        throw SizeLimitExceeded("box product |A|*|B| = " + std::to_string(a.size() * b.size()), lim.max_pairs);
    }
    PairGrid g(a, b);
    std::vector<Bits> gens;
    std::unordered_map<Bits, bool, BitsHash> seen;
    for (Id x = 0; x < a.size(); ++x) {
        for (Id y = 0; y < b.size(); ++y) {
            Bits s = box_set(g, x, y);
            if (seen.emplace(s, true).second) gens.push_back(std::move(s));
        }
    }
    std::deque<Bits> queue(gens.begin(), gens.end());
    while (!queue.empty()) {
        Bits cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : gens) {
            Bits next = cur & gen;
            if (seen.emplace(next, true).second) {
                if (seen.size() > lim.max_elements) throw SizeLimitExceeded("box product element count", lim.max_elements);
                queue.push_back(std::move(next));
            }
        }
    }
    std::vector<Bits> elements;
    elements.reserve(seen.size());
    for (auto& [k, v] : seen) elements.push_back(k);
    sort_sets(elements);
    auto labels = box_labels(g, elements);
    auto name = joined_name(a, b, "[]");
    return SetLattice(std::move(g), std::move(elements), std::move(labels), std::move(name));
}

std::optional<Id> least_containing(const SetLattice& box, const Bits& s) {
    std::optional<Id> best;
    for (Id i = 0; i < box.size(); ++i) {
        if (!s.is_subset_of(box.element(i))) continue;
        if (!best || box.element(i).count() < box.element(*best).count()) best = i;
    }
    if (!best) return std::nullopt;
    for (Id i = 0; i < box.size(); ++i) {
        if (s.is_subset_of(box.element(i)) && !box.element(*best).is_subset_of(box.element(i))) return std::nullopt;
    }
    return best;
}

namespace {

// ⋂ aᵢ□bᵢ = (⋀a)□(⋀b) ∪ ⋃_{S proper, nonempty} (⋀_S a)∘(⋀_{n−S} b)
void append_union_form(const PairGrid& g, const BoxElement& h, std::vector<std::pair<Id, Id>>& box_terms,
                       std::vector<std::pair<Id, Id>>& circ_terms) {
    const auto& w = h.witness;
    const std::size_t n = w.size();
    if (n > 16) throw SizeLimitExceeded("box element witness length", 16);
    Id am = g.a().one(), bm = g.b().one();
    for (auto [a, b] : w) {
        am = g.a().meet(am, a);
        bm = g.b().meet(bm, b);
    }
    box_terms.emplace_back(am, bm);
    for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << n); ++s) {
        Id c = g.a().one(), d = g.b().one();
        for (std::size_t i = 0; i < n; ++i) {
            if (s >> i & 1) {
                c = g.a().meet(c, w[i].first);
            } else {
                d = g.b().meet(d, w[i].second);
            }
        }
        circ_terms.emplace_back(c, d);
    }
}

}  // namespace

BoxElement box_join_by_formula(const PairGrid& g, const BoxElement& h, const BoxElement& k) {
    std::vector<std::pair<Id, Id>> box_terms, circ_terms;
    append_union_form(g, h, box_terms, circ_terms);
    append_union_form(g, k, box_terms, circ_terms);
    // Drop circ terms covered by another term; the union, and so the closure, is unchanged.
    std::vector<Bits> cover;
    for (auto [a, b] : box_terms) cover.push_back(box_set(g, a, b));
    std::vector<std::pair<Id, Id>> kept;
    std::sort(circ_terms.begin(), circ_terms.end());
    circ_terms.erase(std::unique(circ_terms.begin(), circ_terms.end()), circ_terms.end());
    for (std::size_t i = 0; i < circ_terms.size(); ++i) {
        const Bits s = circ_set(g, circ_terms[i].first, circ_terms[i].second);
        bool redundant = std::any_of(cover.begin(), cover.end(), [&](const Bits& c) { return s.is_subset_of(c); });
        for (std::size_t j = 0; j < circ_terms.size() && !redundant; ++j) {
            if (j == i) continue;
            const Bits t = circ_set(g, circ_terms[j].first, circ_terms[j].second);
            if (s.is_subset_of(t) && (s != t || j < i)) redundant = true;
        }
        if (!redundant) {
            kept.push_back(circ_terms[i]);
        }
    }
    return box_closure(g, boxdot_element(g, box_terms, kept));
}

LatticeTensor lattice_tensor_product(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim,
                                     BoundFlags fa, BoundFlags fb) {
    // Hiding a bound only simulates a lattice without it when the rest is still a sublattice.
    for (const auto& [l, f] : {std::pair{&a, fa}, std::pair{&b, fb}}) {
        if (!f.unit && l->size() > 1 && l->poset().lower_covers(l->one()).size() != 1) {
            throw FormatError("hiding the unit of " + l->name() + " needs a join-irreducible top");
        }
        if (!f.zero && l->size() > 1 && l->poset().upper_covers(l->zero()).size() != 1) {
            throw FormatError("hiding the zero of " + l->name() + " needs a meet-irreducible bottom");
        }
    }
    const auto box = box_product(a, b, lim);
    const auto& g = box.grid();
    std::vector<Bits> confining;
    for (Id x = 0; x < a.size(); ++x) {
        if (!fa.unit && x == a.one()) continue;
        for (Id y = 0; y < b.size(); ++y) {
            if (!fb.unit && y == b.one()) continue;
            confining.push_back(boxtimes_set(g, x, y, fa, fb));
        }
    }
    std::vector<bool> confined(box.size(), false);
    std::vector<Bits> elements;
    for (Id i = 0; i < box.size(); ++i) {
        const auto& h = box.element(i);
        confined[i] = std::any_of(confining.begin(), confining.end(), [&](const Bits& c) { return h.is_subset_of(c); });
        if (confined[i]) elements.push_back(h);
    }
    if (elements.empty()) throw EmptyResult("no element of the box product is confined");

    const auto& bl = box.lattice();
    for (Id i = 0; i < box.size(); ++i) {
        if (!confined[i]) continue;
        for (Id j = 0; j < box.size(); ++j) {
            if (bl.leq(j, i) && !confined[j]) throw std::logic_error("confined elements are not down-closed");
            if (confined[j] && !confined[bl.join(i, j)]) throw std::logic_error("confined elements are not join-closed");
        }
    }
    if (fa.unit && fb.unit && elements.size() != box.size()) {
        throw std::logic_error("with both units every box element should be confined");
    }

    LatticeTensor t{SetLattice(g, elements, box_labels(g, elements), joined_name(a, b, "[x]")), {}};
    t.cases = {fa.zero && fb.zero, (fa.zero && fa.unit) || (fb.zero && fb.unit), fa.unit && fb.unit};
    return t;
}

namespace {

// H ↦ ⋂{x□y : ⟨x,y⟩ ∈ H}, read in the grid of the dual factors.
Bits dual_box_image(const PairGrid& from, const PairGrid& to, const Bits& h) {
    Bits out = to.full();
    for_each_bit(h, [&](Id i) { out &= box_set(to, from.first(i), from.second(i)); });
    return out;
}

}  // namespace

LtpReport ltp_theorems(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim) {
    LtpReport r;
    const auto ltp = lattice_tensor_product(a, b, lim);
    const auto& family = ltp.set.elements();

    auto dual_task = std::async(std::launch::async, [&]() {
        const auto box_d = box_product(dual(a), dual(b), lim);
        const bool iso = isomorphic(dual(ltp.set.lattice()), box_d.lattice());
        bool map_ok = box_d.size() == ltp.set.size();
        std::vector<Id> img(ltp.set.size());
        std::vector<bool> hit(box_d.size(), false);
        for (Id i = 0; i < ltp.set.size() && map_ok; ++i) {
            auto id = box_d.find(dual_box_image(ltp.set.grid(), box_d.grid(), ltp.set.element(i)));
            if (!id || hit[*id]) {
                map_ok = false;
                break;
            }
            hit[*id] = true;
            img[i] = *id;
        }
        for (Id i = 0; i < ltp.set.size() && map_ok; ++i) {
            for (Id j = 0; j < ltp.set.size(); ++j) {
                if (ltp.set.lattice().leq(i, j) != box_d.lattice().leq(img[j], img[i])) {
                    map_ok = false;
                    break;
                }
            }
        }
        return std::make_pair(iso, map_ok);
    });

    auto capped_task = std::async(std::launch::async, [&]() -> std::pair<bool, std::string> {
        const auto t = tensor_product(a, b, lim);
        for (const auto& h : family) {
            if (!t.find(h)) return {false, "an element of A[x]B is not a bi-ideal"};
        }
        const auto v = is_sub_tensor_product(t, family);
        if (!v.verdict) return {false, v.detail};
        if (!v.all_capped) return {false, "some element of A[x]B is not capped"};
        return {true, {}};
    });

    auto equality_task = std::async(std::launch::async, [&]() -> std::optional<bool> {
        if (!is_distributive(a).distributive && !is_distributive(b).distributive) return std::nullopt;
        const auto t = tensor_product(a, b, lim);
        if (t.size() != family.size()) return false;
        return std::all_of(family.begin(), family.end(), [&](const Bits& h) { return t.find(h).has_value(); });
    });

    std::tie(r.dual_iso, r.dual_map) = dual_task.get();
    std::tie(r.capped_subtensor, r.detail) = capped_task.get();
    r.distributive_equality = equality_task.get();
    return r;
}

namespace {

// First covering pair (j_*, j) of each join-irreducible congruence of `l`, keyed by its index.
std::map<Id, std::pair<Id, Id>> ji_generators(const FiniteLattice& l, const ConLattice& cl) {
    std::map<Id, std::pair<Id, Id>> out;
    for (const auto& j : join_irreducibles(l)) {
        const Id idx = *cl.find(principal_congruence(l, j.cover, j.element));
        out.emplace(idx, std::make_pair(j.cover, j.element));
    }
    return out;
}

}  // namespace

MuReport mu_iso(const FiniteLattice& a, const FiniteLattice& b, const MuOptions& opt) {
    MuReport rep;
    const auto ltp = lattice_tensor_product(a, b, opt.limits);
    const auto& c = ltp.set.lattice();
    const auto& g = ltp.set.grid();
    rep.ltp_size = ltp.set.size();
    const auto ca = con_lattice(a, opt.limits);
    const auto cb = con_lattice(b, opt.limits);
    const auto gen_a = ji_generators(a, ca);
    const auto gen_b = ji_generators(b, cb);

    auto elem = [&](const Bits& s) {
        auto id = ltp.set.find(s);
        if (!id) throw std::logic_error("expected element missing from A[x]B");
        return *id;
    };
    auto tensor = [&](Id x, Id y) { return elem(boxtimes_set(g, x, y)); };
    auto formula_i = [&](Id a0, Id a1, Id b0, Id b1) {
        return principal_congruence(c, c.join(tensor(a0, b1), tensor(a1, b0)), tensor(a1, b1));
    };
    auto formula_ii = [&](Id a0, Id a1, Id b0, Id b1) {
        const Bits z = box_set(g, a.zero(), b1);
        return principal_congruence(c, elem(box_set(g, a0, b0) & z), elem(box_set(g, a1, b0) & z));
    };
    auto formula_iii = [&](Id a0, Id a1, Id b0, Id b1) {
        return principal_congruence(c, elem(box_set(g, a0, b0)), elem(box_set(g, a0, b1) & box_set(g, a1, b0)));
    };
    auto on_generators = [&](auto formula) {
        return [&, formula](Id i, Id j) {
            auto [a0, a1] = gen_a.at(i);
            auto [b0, b1] = gen_b.at(j);
            return formula(a0, a1, b0, b1);
        };
    };

    rep.generators = check_generator_iso(c, ca, cb, on_generators(formula_i));
    if (!rep.generators.verdict) {
        rep.failure = rep.generators.failure;
        return rep;
    }

    // Formula (i) on arbitrary principal pairs against the join extension from generators.
    std::vector<std::pair<Id, Id>> pa, pb;
    for (Id x = 0; x < a.size(); ++x) {
        for (Id y = 0; y < a.size(); ++y) {
            if (a.poset().lt(x, y)) pa.emplace_back(x, y);
        }
    }
    for (Id x = 0; x < b.size(); ++x) {
        for (Id y = 0; y < b.size(); ++y) {
            if (b.poset().lt(x, y)) pb.emplace_back(x, y);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> probes;
    if (pa.size() * pb.size() <= opt.exhaustive_pairs) {
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = 0; j < pb.size(); ++j) probes.emplace_back(i, j);
        }
    } else {
        Rng rng(opt.seed);
        for (std::size_t s = 0; s < opt.samples; ++s) probes.emplace_back(draw(rng, pa.size()), draw(rng, pb.size()));
    }
    const auto& ja = ca.join_irreducibles;
    const auto& jb = cb.join_irreducibles;
    for (auto [i, j] : probes) {
        const auto [a0, a1] = pa[i];
        const auto [b0, b1] = pb[j];
        const Id alpha = *ca.find(principal_congruence(a, a0, a1));
        const Id beta = *cb.find(principal_congruence(b, b0, b1));
        Congruence expect = Congruence::identity(c.size());
        for (std::size_t p = 0; p < ja.size(); ++p) {
            if (!ca.lattice.leq(ja[p], alpha)) continue;
            for (std::size_t q = 0; q < jb.size(); ++q) {
                if (cb.lattice.leq(jb[q], beta)) {
                    expect = join(expect, rep.generators.targets[rep.generators.map[p][q]]);
                }
            }
        }
        ++rep.formula_checks;
        if (!(formula_i(a0, a1, b0, b1) == expect)) {
            rep.failure = "formula value at Theta(" + a.label(a0) + "," + a.label(a1) + ") (x) Theta(" +
                          b.label(b0) + "," + b.label(b1) + ") differs from the join extension";
            return rep;
        }
    }
    rep.verdict = true;

    const auto ii = check_generator_iso(c, ca, cb, on_generators(formula_ii));
    rep.formula_ii_iso = ii.verdict;
    rep.formula_ii_agrees = true;
    for (const auto& [i, ga] : gen_a) {
        for (const auto& [j, gb] : gen_b) {
            if (!(formula_i(ga.first, ga.second, gb.first, gb.second) ==
                  formula_ii(ga.first, ga.second, gb.first, gb.second))) {
                rep.formula_ii_agrees = false;
            }
        }
    }

    // (iii) against (i) on the duals: an element H of A^d⊠B^d corresponds to ⋂{x□y : ⟨x,y⟩ ∈ H}.
    const auto ad = dual(a), bd = dual(b);
    const auto ltp_d = lattice_tensor_product(ad, bd, opt.limits);
    const auto& cd = ltp_d.set.lattice();
    const auto& gd = ltp_d.set.grid();
    std::vector<Id> phi(ltp_d.set.size());
    bool consistent = ltp_d.set.size() == ltp.set.size();
    for (Id e = 0; e < ltp_d.set.size() && consistent; ++e) {
        auto id = ltp.set.find(dual_box_image(gd, g, ltp_d.set.element(e)));
        if (!id) consistent = false; else phi[e] = *id;
    }
    for (const auto& [i, ga] : gen_a) {
        for (const auto& [j, gb] : gen_b) {
            if (!consistent) break;
            const auto [a0, a1] = ga;
            const auto [b0, b1] = gb;
            auto td = [&](Id x, Id y) { return *ltp_d.set.find(boxtimes_set(gd, x, y)); };
            const auto theta = principal_congruence(cd, cd.join(td(a1, b0), td(a0, b1)), td(a0, b0));
            std::vector<Id> moved(c.size());
            for (Id e = 0; e < cd.size(); ++e) moved[phi[e]] = theta.block(e);
            if (!(Congruence(moved) == formula_iii(a0, a1, b0, b1))) consistent = false;
        }
    }
    rep.formula_iii_consistent = consistent;
    return rep;
}

TripleKind parse_triple_kind(const std::string& s) {
    if (s == "mL" || s == "ml") return TripleKind::ml;
    if (s == "m3bracket" || s == "balanced") return TripleKind::m3bracket;
    if (s == "n5bracket") return TripleKind::n5bracket;
    if (s == "nL" || s == "nl") return TripleKind::nl;
    throw FormatError("unknown triple kind: " + s);
}

std::string to_string(TripleKind k) {
    switch (k) {
        case TripleKind::ml: return "mL";
        case TripleKind::m3bracket: return "m3bracket";
        case TripleKind::n5bracket: return "n5bracket";
        case TripleKind::nl: return "nL";
    }
    return {};
}

std::optional<Id> TripleLattice::find(const std::array<Id, 3>& t) const {
    auto it = std::lower_bound(triples.begin(), triples.end(), t);
    if (it == triples.end() || *it != t) return std::nullopt;
    return static_cast<Id>(it - triples.begin());
}

TripleLattice triples(const FiniteLattice& l, TripleKind kind) {
    const Id n = static_cast<Id>(l.size());
    std::set<std::array<Id, 3>> found;
    for (Id u = 0; u < n; ++u) {
        for (Id v = 0; v < n; ++v) {
            for (Id w = 0; w < n; ++w) {
                switch (kind) {
                    case TripleKind::ml:
                        found.insert({l.meet(v, w), l.meet(u, w), l.meet(u, v)});
                        break;
                    case TripleKind::nl:
                        found.insert({l.meet(v, w), l.meet(u, w), v});
                        break;
                    case TripleKind::m3bracket: {
                        const Id m = l.meet(u, v);
                        if (m == l.meet(u, w) && m == l.meet(v, w)) found.insert({u, v, w});
                        break;
                    }
                    case TripleKind::n5bracket:
                        if (l.leq(l.meet(v, w), u) && l.leq(u, w)) found.insert({u, v, w});
                        break;
                }
            }
        }
    }
    TripleLattice t{kind, {found.begin(), found.end()}, {}, std::nullopt};
    std::vector<std::string> labels;
    for (const auto& x : t.triples) labels.push_back(l.label(x[0]) + "," + l.label(x[1]) + "," + l.label(x[2]));
    t.order = FinitePoset::from_predicate(std::move(labels), [&](Id i, Id j) {
        const auto& x = t.triples[i];
        const auto& y = t.triples[j];
        return l.leq(x[0], y[0]) && l.leq(x[1], y[1]) && l.leq(x[2], y[2]);
    });
    if (is_lattice(t.order).lattice) {
        std::string name;
        if (!l.name().empty()) {
            switch (kind) {
                case TripleKind::ml: name = "M3<" + l.name() + ">"; break;
                case TripleKind::m3bracket: name = "M3[" + l.name() + "]"; break;
                case TripleKind::n5bracket: name = "N5[" + l.name() + "]"; break;
                case TripleKind::nl: name = "N5<" + l.name() + ">"; break;
            }
        }
        t.lattice = FiniteLattice::from_poset(t.order, std::move(name));
    } else if (kind == TripleKind::ml || kind == TripleKind::nl) {
        throw std::logic_error("meet-parametrised triples do not form a lattice");
    }
    return t;
}

TripleIsoReport triple_iso_check(const FiniteLattice& l, const std::string& which, const Limits& lim) {
    if (which != "m3" && which != "n5") throw FormatError("triple_iso_check expects m3 or n5");
    const bool m3 = which == "m3";
    const auto a = named_family(m3 ? "M3" : "N5");
    const Id p = a.find_label("a"), q = a.find_label("b"), r = a.find_label("c");
    const auto lt = lattice_tensor_product(a, l, lim);
    const auto& g = lt.set.grid();
    const auto tri = triples(l, m3 ? TripleKind::ml : TripleKind::nl);

    TripleIsoReport rep;
    const Id none = static_cast<Id>(-1);
    std::vector<Id> image(tri.triples.size(), none);
    const Id n = static_cast<Id>(l.size());
    for (Id u = 0; u < n; ++u) {
        for (Id v = 0; v < n; ++v) {
            for (Id w = 0; w < n; ++w) {
                const std::array<Id, 3> t{l.meet(v, w), l.meet(u, w), m3 ? l.meet(u, v) : v};
                const Bits h = box_set(g, p, u) & box_set(g, q, v) & box_set(g, r, w);
                auto id = lt.set.find(h);
                if (!id) {
                    rep.failure = "image of " + tri.order.label(*tri.find(t)) + " is not in the lattice tensor product";
                    return rep;
                }
                Id& slot = image[*tri.find(t)];
                if (slot != none && slot != *id) {
                    rep.failure = "map is not well defined at " + tri.order.label(*tri.find(t));
                    return rep;
                }
                slot = *id;
            }
        }
    }
    std::vector<bool> hit(lt.set.size(), false);
    for (Id x : image) {
        if (hit[x]) {
            rep.failure = "map is not injective";
            return rep;
        }
        hit[x] = true;
    }
    if (image.size() != lt.set.size()) {
        rep.failure = "map is not surjective: " + std::to_string(image.size()) + " triples vs " +
                      std::to_string(lt.set.size()) + " elements";
        return rep;
    }
    for (Id i = 0; i < image.size(); ++i) {
        for (Id j = 0; j < image.size(); ++j) {
            if (tri.order.leq(i, j) != lt.set.lattice().leq(image[i], image[j])) {
                rep.failure = "map does not preserve and reflect the order";
                return rep;
            }
        }
    }
    rep.verdict = true;
    return rep;
}

EmbeddingKind parse_embedding_kind(const std::string& s) {
    if (s == "diagonal") return EmbeddingKind::diagonal;
    if (s == "j") return EmbeddingKind::j;
    if (s == "j_s" || s == "js") return EmbeddingKind::j_s;
    throw FormatError("unknown embedding kind: " + s);
}

EmbeddingReport embedding_check(const FiniteLattice& s, const FiniteLattice& l, EmbeddingKind which,
                                std::optional<Id> s_elem, const Limits& lim) {
    EmbeddingReport rep;
    auto require = [](std::optional<Id> id) {
        if (!id) throw NotAnEmbedding("image of an element is missing from the target");
        return *id;
    };
    if (which == EmbeddingKind::diagonal) {
        const auto tri = triples(l, TripleKind::ml);
        rep.target = *tri.lattice;
        for (Id x = 0; x < l.size(); ++x) rep.map.push_back(require(tri.find({x, x, x})));
    } else {
        if (!con_lattice(s, lim).simple) throw NotSimple("S is not simple");
        const auto lt = lattice_tensor_product(s, l, lim);
        const auto& g = lt.set.grid();
        rep.target = lt.set.lattice();
        if (which == EmbeddingKind::j) {
            for (Id x = 0; x < l.size(); ++x) rep.map.push_back(require(lt.set.find(box_set(g, s.zero(), x))));
        } else {
            if (!s_elem || *s_elem >= s.size() || *s_elem == s.zero()) {
                throw FormatError("j_s needs a nonzero element s of S");
            }
            for (Id x = 0; x < l.size(); ++x) {
                rep.map.push_back(require(lt.set.find(boxtimes_set(g, *s_elem, x))));
            }
        }
    }
    rep.verdict = cong_preserving_check(l, rep.target, rep.map, lim);
    return rep;
}

}  // namespace latkit
