#include "latkit/tensor.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace latkit {

BiIdeal bottom_tensor(const PairGrid& g) { return {g.bottom()}; }

BiIdeal pure_tensor(const PairGrid& g, Id a, Id b) {
    Bits s = g.bottom();
    s |= g.down_box(a, b);
    return {std::move(s)};
}

BiIdeal mixed_tensor(const PairGrid& g, Id a0, Id b0, Id a1, Id b1) {
    if (!g.a().leq(a0, a1) || !g.b().leq(b1, b0)) {
        throw MixedPreconditionViolated("mixed tensor needs a0 <= a1 and b0 >= b1");
    }
    Bits s = pure_tensor(g, a0, b0).members;
    s |= pure_tensor(g, a1, b1).members;
    if (bi_ideal_closure(g, s).members != s) {
        throw std::logic_error("union of opposed pure tensors is not a bi-ideal");
    }
    return {std::move(s)};
}

BiIdeal bi_ideal_closure(const PairGrid& g, const Bits& seed) {
    const auto& a = g.a();
    const auto& b = g.b();
    Bits cur = seed;
    cur |= g.bottom();
    std::vector<Id> row(a.size()), col(b.size());
    while (true) {
        std::fill(row.begin(), row.end(), b.zero());
        std::fill(col.begin(), col.end(), a.zero());
        for_each_bit(cur, [&](Id i) {
            const Id x = g.first(i), y = g.second(i);
            row[x] = b.join(row[x], y);
            col[y] = a.join(col[y], x);
        });
        Bits next = cur;
        for (Id x = 0; x < a.size(); ++x) next.set(g.index(x, row[x]));
        for (Id y = 0; y < b.size(); ++y) next.set(g.index(col[y], y));
        next = g.down_closure(next);
        if (next == cur) break;
        cur = std::move(next);
    }
    return {std::move(cur)};
}

bool is_bi_ideal(const PairGrid& g, const Bits& s) {
    if (!g.bottom().is_subset_of(s)) return false;
    bool ok = true;
    for_each_bit(s, [&](Id i) {
        if (ok && !g.down_box(g.first(i), g.second(i)).is_subset_of(s)) ok = false;
    });
    if (!ok) return false;
    const auto ps = g.pairs(s);
    for (auto [x0, y0] : ps) {
        for (auto [x1, y1] : ps) {
            if (x0 != x1 && y0 != y1) continue;
            if (!s.test(g.index(g.a().join(x0, x1), g.b().join(y0, y1)))) return false;
        }
    }
    return true;
}

std::vector<std::pair<Id, Id>> caps(const PairGrid& g, const BiIdeal& i) {
    return g.maximal_pairs(i.members);
}

std::string cap_label(const PairGrid& g, const BiIdeal& i) {
    std::string out;
    for (auto [x, y] : caps(g, i)) {
        if (x == g.a().zero() || y == g.b().zero()) continue;
        if (!out.empty()) out += "+";
        out += "<" + g.a().label(x) + "," + g.b().label(y) + ">";
    }
    return out.empty() ? "0" : out;
}

TensorProduct::TensorProduct(PairGrid grid, std::vector<Bits> elements)
    : grid_(std::move(grid)), elements_(std::move(elements)) {
    std::vector<std::string> labels;
    labels.reserve(elements_.size());
    for (Id i = 0; i < elements_.size(); ++i) {
        index_.emplace(elements_[i], i);
        labels.push_back(cap_label(grid_, {elements_[i]}));
    }
    std::string name;
    if (!grid_.a().name().empty() && !grid_.b().name().empty()) {
        name = grid_.a().name() + "(x)" + grid_.b().name();
    }
    lattice_ = lattice_of_sets(elements_, std::move(labels), std::move(name));
}

std::optional<Id> TensorProduct::find(const Bits& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Id TensorProduct::pure(Id a, Id b) const { return *find(pure_tensor(grid_, a, b).members); }

TensorProduct tensor_product(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim) {
    if (a.size() * b.size() > lim.max_pairs) {
        throw SizeLimitExceeded("tensor product |A|*|B| = " + std::to_string(a.size() * b.size()),
                                lim.max_pairs);
    }
    PairGrid g(a, b);
    std::vector<Bits> gens;
    for (Id x = 0; x < a.size(); ++x) {
        for (Id y = 0; y < b.size(); ++y) {
            if (x != a.zero() && y != b.zero()) gens.push_back(pure_tensor(g, x, y).members);
        }
    }
    // Every bi-ideal is the join of the pure tensors below it, so adding one generator at a time
    // reaches all of them.
    std::unordered_map<Bits, bool, BitsHash> seen;
    std::deque<Bits> queue{g.bottom()};
    seen.emplace(g.bottom(), true);
    while (!queue.empty()) {
        Bits cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : gens) {
            if (gen.is_subset_of(cur)) continue;
            Bits u = cur;
            u |= gen;
            Bits next = bi_ideal_closure(g, u).members;
            if (seen.emplace(next, true).second) {
                if (seen.size() > lim.max_elements) {
                    throw SizeLimitExceeded("tensor product element count", lim.max_elements);
                }
                queue.push_back(std::move(next));
            }
        }
    }
    std::vector<Bits> elements;
    elements.reserve(seen.size());
    for (auto& [k, v] : seen) elements.push_back(k);
    std::sort(elements.begin(), elements.end(), [](const Bits& x, const Bits& y) {
        const auto cx = x.count(), cy = y.count();
        return cx != cy ? cx < cy : x < y;
    });
    return TensorProduct(std::move(g), std::move(elements));
}

HomTensorResult hom_tensor(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim) {
    HomTensorResult res;
    const auto tensor = tensor_product(a, b, lim);
    const auto& g = tensor.grid();
    const auto ja = join_irreducible_ids(a);
    const std::size_t na = a.size();

    // Restrictions to J(A): antitone maps J(A) -> B, enumerated lowest value first.
    std::vector<Id> assignment(ja.size(), 0);
    std::vector<std::vector<Id>> restrictions;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == ja.size()) {
            restrictions.push_back(assignment);
            if (restrictions.size() > lim.max_elements) {
                throw SizeLimitExceeded("tensor homomorphism count", lim.max_elements);
            }
            return;
        }
        for (Id v = 0; v < b.size(); ++v) {
            bool ok = true;
            for (std::size_t p = 0; p < i && ok; ++p) {
                if (a.leq(ja[p], ja[i]) && !b.leq(v, assignment[p])) ok = false;
                if (a.leq(ja[i], ja[p]) && !b.leq(assignment[p], v)) ok = false;
            }
            if (!ok) continue;
            assignment[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);

    for (const auto& r : restrictions) {
        TensorHom h;
        h.value.assign(na, b.one());
        for (Id x = 0; x < na; ++x) {
            if (x == a.zero()) continue;
            Id v = b.one();
            for (std::size_t p = 0; p < ja.size(); ++p) {
                if (a.leq(ja[p], x)) v = b.meet(v, r[p]);
            }
            h.value[x] = v;
        }
        bool hom = true;
        for (Id x0 = 0; x0 < na && hom; ++x0) {
            if (x0 == a.zero()) continue;
            for (Id x1 = 0; x1 < na; ++x1) {
                if (x1 == a.zero()) continue;
                if (h.value[a.join(x0, x1)] != b.meet(h.value[x0], h.value[x1])) {
                    hom = false;
                    break;
                }
            }
        }
        if (hom) res.homs.push_back(std::move(h));
    }

    std::vector<std::string> labels;
    for (const auto& h : res.homs) {
        std::string s = "[";
        for (std::size_t p = 0; p < ja.size(); ++p) {
            s += (p ? "," : "") + a.label(ja[p]) + ":" + b.label(h.value[ja[p]]);
        }
        labels.push_back(s + "]");
    }
    auto leq_hom = [&](Id i, Id j) {
        for (Id x = 0; x < na; ++x) {
            if (x != a.zero() && !b.leq(res.homs[i].value[x], res.homs[j].value[x])) return false;
        }
        return true;
    };
    res.lattice = FiniteLattice::from_poset(FinitePoset::from_predicate(std::move(labels), leq_hom));

    std::vector<bool> hit(tensor.size(), false);
    for (const auto& h : res.homs) {
        Bits e = g.bottom();
        for (Id x = 0; x < na; ++x) {
            if (x == a.zero()) continue;
            for_each_bit(b.poset().down(h.value[x]), [&](Id y) { e.set(g.index(x, y)); });
        }
        auto id = tensor.find(e);
        if (!id) {
            res.failure = "epsilon image is not a bi-ideal of the tensor product";
            return res;
        }
        if (hit[*id]) {
            res.failure = "epsilon is not injective";
            return res;
        }
        hit[*id] = true;
        res.epsilon.push_back(*id);
    }
    if (res.homs.size() != tensor.size()) {
        res.failure = "epsilon is not surjective";
        return res;
    }
    for (Id i = 0; i < res.homs.size(); ++i) {
        for (Id j = 0; j < res.homs.size(); ++j) {
            if (res.lattice.leq(i, j) != tensor.lattice().leq(res.epsilon[i], res.epsilon[j])) {
                res.failure = "epsilon does not preserve and reflect the order";
                return res;
            }
        }
    }
    res.iso_check = true;
    return res;
}

}  // namespace latkit
