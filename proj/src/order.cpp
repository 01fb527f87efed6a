#include "latkit/order.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace latkit {

namespace {

// Fills join/meet tables by taking, for each pair, the first common upper bound in a linear
// extension and checking that it lies below every other common upper bound.
std::optional<std::pair<Id, Id>> compute_tables(const FinitePoset& p, std::vector<Id>* join,
                                                std::vector<Id>* meet, std::string* reason) {
    const std::size_t n = p.size();
    const auto& topo = p.linear_extension();
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[topo[i]] = i;

    // up sets indexed by topo position; down sets indexed by reversed topo position.
    std::vector<Bits> up_t(n, Bits(n)), down_r(n, Bits(n));
    for (Id x = 0; x < n; ++x) {
        for_each_bit(p.up(x), [&](Id y) { up_t[x].set(pos[y]); });
        for_each_bit(p.down(x), [&](Id y) { down_r[x].set(n - 1 - pos[y]); });
    }

    if (join) join->assign(n * n, 0);
    if (meet) meet->assign(n * n, 0);
    Bits scratch(n);
    for (Id x = 0; x < n; ++x) {
        for (Id y = x; y < n; ++y) {
            if (join) {
                scratch = up_t[x];
                scratch &= up_t[y];
                const auto first = scratch.find_first();
                if (first == Bits::npos || up_t[topo[first]] != scratch) {
                    if (reason) *reason = first == Bits::npos ? "no upper bound" : "no least upper bound";
                    return std::make_pair(x, y);
                }
                (*join)[x * n + y] = (*join)[y * n + x] = topo[first];
            }
            if (meet) {
                scratch = down_r[x];
                scratch &= down_r[y];
                const auto first = scratch.find_first();
                if (first == Bits::npos || down_r[topo[n - 1 - first]] != scratch) {
                    if (reason) *reason = first == Bits::npos ? "no lower bound" : "no greatest lower bound";
                    return std::make_pair(x, y);
                }
                (*meet)[x * n + y] = (*meet)[y * n + x] = topo[n - 1 - first];
            }
        }
    }
    return std::nullopt;
}

}  // namespace

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     const std::vector<std::pair<Id, Id>>& covers) {
    const std::size_t n = labels.size();
    std::vector<std::vector<Id>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [i, j] : covers) {
        if (i >= n || j >= n) throw FormatError("cover pair refers to unknown element");
        if (i == j) throw CyclicCovers("cover relation has a loop at " + labels[i]);
        succ[i].push_back(j);
        ++indeg[j];
    }
    std::vector<Id> order;
    std::queue<Id> ready;
    for (Id x = 0; x < n; ++x) {
        if (indeg[x] == 0) ready.push(x);
    }
    while (!ready.empty()) {
        const Id x = ready.front();
        ready.pop();
        order.push_back(x);
        for (Id y : succ[x]) {
            if (--indeg[y] == 0) ready.push(y);
        }
    }
    if (order.size() != n) throw CyclicCovers("cover relation contains a cycle");

    std::vector<Bits> up(n, Bits(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        up[*it].set(*it);
        for (Id y : succ[*it]) up[*it] |= up[y];
    }
    FinitePoset p;
    p.labels_ = std::move(labels);
    p.up_ = std::move(up);
    p.derive();
    return p;
}

FinitePoset FinitePoset::from_up_sets(std::vector<std::string> labels, std::vector<Bits> up) {
    const std::size_t n = labels.size();
    if (up.size() != n) throw InvalidOrder("order matrix size does not match element count");
    for (Id x = 0; x < n; ++x) {
        if (up[x].size() != n) throw InvalidOrder("order matrix row has the wrong width");
        if (!up[x].test(x)) throw InvalidOrder("order is not reflexive at " + labels[x]);
    }
    for (Id x = 0; x < n; ++x) {
        for (auto y = up[x].find_next(x); y != Bits::npos; y = up[x].find_next(y)) {
            if (up[y].test(x)) throw InvalidOrder("order is not antisymmetric");
        }
        for_each_bit(up[x], [&](Id y) {
            if (!up[y].is_subset_of(up[x])) throw InvalidOrder("order is not transitive");
        });
    }
    FinitePoset p;
    p.labels_ = std::move(labels);
    p.up_ = std::move(up);
    p.derive();
    return p;
}

void FinitePoset::derive() {
    const std::size_t n = labels_.size();
    down_.assign(n, Bits(n));
    for (Id x = 0; x < n; ++x) {
        for_each_bit(up_[x], [&](Id y) { down_[y].set(x); });
    }
    topo_.resize(n);
    std::iota(topo_.begin(), topo_.end(), Id{0});
    std::stable_sort(topo_.begin(), topo_.end(),
                     [&](Id a, Id b) { return down_[a].count() < down_[b].count(); });

    lower_covers_.assign(n, {});
    upper_covers_.assign(n, {});
    Bits strict(n), between(n);
    for (Id y = 0; y < n; ++y) {
        strict = down_[y];
        strict.reset(y);
        for_each_bit(strict, [&](Id z) {
            between = up_[z];
            between &= strict;
            if (between.count() == 1) {
                lower_covers_[y].push_back(z);
                upper_covers_[z].push_back(y);
            }
        });
    }
    for (auto& v : upper_covers_) std::sort(v.begin(), v.end());

    height_.assign(n, 0);
    for (Id x : topo_) {
        for (Id z : lower_covers_[x]) height_[x] = std::max(height_[x], height_[z] + 1);
    }
}

std::vector<std::pair<Id, Id>> FinitePoset::covers() const {
    std::vector<std::pair<Id, Id>> out;
    for (Id x = 0; x < size(); ++x) {
        for (Id y : upper_covers_[x]) out.emplace_back(x, y);
    }
    return out;
}

std::vector<Id> FinitePoset::minimal() const {
    std::vector<Id> out;
    for (Id x = 0; x < size(); ++x) {
        if (lower_covers_[x].empty()) out.push_back(x);
    }
    return out;
}

std::vector<Id> FinitePoset::maximal() const {
    std::vector<Id> out;
    for (Id x = 0; x < size(); ++x) {
        if (upper_covers_[x].empty()) out.push_back(x);
    }
    return out;
}

FinitePoset FinitePoset::subposet(const std::vector<Id>& ids) const {
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (Id x : ids) labels.push_back(labels_[x]);
    return from_predicate(std::move(labels), [&](Id i, Id j) { return leq(ids[i], ids[j]); });
}

FinitePoset FinitePoset::dual() const {
    FinitePoset p;
    p.labels_ = labels_;
    p.up_ = down_;
    p.derive();
    return p;
}

LatticeVerdict is_lattice(const FinitePoset& p) {
    LatticeVerdict v;
    if (p.size() == 0) {
        v.reason = "empty poset has no bounds";
        return v;
    }
    std::vector<Id> join, meet;
    v.witness = compute_tables(p, &join, &meet, &v.reason);
    v.lattice = !v.witness;
    return v;
}

FiniteLattice FiniteLattice::from_poset(FinitePoset p, std::string name) {
    if (p.size() == 0) throw NotALattice("empty poset is not a lattice", std::nullopt);
    FiniteLattice l;
    std::string reason;
    if (auto w = compute_tables(p, &l.join_, &l.meet_, &reason)) {
        throw NotALattice("not a lattice: pair (" + p.label(w->first) + ", " + p.label(w->second) +
                              ") has " + reason,
                          w);
    }
    const std::size_t n = p.size();
    l.zero_ = p.linear_extension().front();
    l.one_ = p.linear_extension().back();
    if (p.up(l.zero_).count() != n || p.down(l.one_).count() != n) {
        throw NotALattice("lattice bounds missing", std::nullopt);
    }
    l.poset_ = std::move(p);
    l.name_ = std::move(name);
    return l;
}

Id FiniteLattice::find_label(const std::string& label) const {
    const auto& ls = labels();
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) throw FormatError("no element labelled '" + label + "'");
    return static_cast<Id>(it - ls.begin());
}

JoinSemilattice JoinSemilattice::from_lattice(const FiniteLattice& l) {
    JoinSemilattice s;
    s.poset_ = l.poset();
    const std::size_t n = l.size();
    s.join_.resize(n * n);
    for (Id x = 0; x < n; ++x) {
        for (Id y = 0; y < n; ++y) s.join_[x * n + y] = l.join(x, y);
    }
    s.zero_ = l.zero();
    return s;
}

JoinSemilattice JoinSemilattice::meet_view(const FiniteLattice& l) {
    return from_lattice(dual(l));
}

JoinSemilattice JoinSemilattice::from_poset(FinitePoset p) {
    JoinSemilattice s;
    std::string reason;
    if (p.size() == 0) throw NotALattice("empty poset", std::nullopt);
    if (auto w = compute_tables(p, &s.join_, nullptr, &reason)) {
        throw NotALattice("not a join-semilattice: pair has " + reason, w);
    }
    const Id first = p.linear_extension().front();
    if (p.up(first).count() == p.size()) s.zero_ = first;
    s.poset_ = std::move(p);
    return s;
}

std::vector<Id> JoinSemilattice::join_irreducibles() const {
    std::vector<Id> out;
    for (Id x = 0; x < size(); ++x) {
        if (zero_ && *zero_ == x) continue;
        Bits below = poset_.down(x);
        below.reset(x);
        if (below.none()) {
            out.push_back(x);
            continue;
        }
        std::optional<Id> acc;
        for_each_bit(below, [&](Id y) { acc = acc ? join(*acc, y) : y; });
        if (*acc != x) out.push_back(x);
    }
    return out;
}

std::vector<Id> JoinSemilattice::nonzero() const {
    std::vector<Id> out;
    for (Id x = 0; x < size(); ++x) {
        if (!zero_ || *zero_ != x) out.push_back(x);
    }
    return out;
}

std::vector<Irreducible> join_irreducibles(const FiniteLattice& l) {
    std::vector<Irreducible> out;
    for (Id x = 0; x < l.size(); ++x) {
        const auto& lc = l.poset().lower_covers(x);
        if (x != l.zero() && lc.size() == 1) out.push_back({x, lc.front()});
    }
    return out;
}

std::vector<Irreducible> meet_irreducibles(const FiniteLattice& l) {
    std::vector<Irreducible> out;
    for (Id x = 0; x < l.size(); ++x) {
        const auto& uc = l.poset().upper_covers(x);
        if (x != l.one() && uc.size() == 1) out.push_back({x, uc.front()});
    }
    return out;
}

std::vector<Id> join_irreducible_ids(const FiniteLattice& l) {
    std::vector<Id> out;
    for (const auto& j : join_irreducibles(l)) out.push_back(j.element);
    return out;
}

DistributivityVerdict is_distributive(const FiniteLattice& l) {
    const Id n = static_cast<Id>(l.size());
    for (Id x = 0; x < n; ++x) {
        for (Id y = 0; y < n; ++y) {
            for (Id z = 0; z < n; ++z) {
                if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) {
                    return {false, std::array<Id, 3>{x, y, z}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

FiniteLattice build_lattice(std::vector<std::string> labels,
                            const std::vector<std::pair<Id, Id>>& covers, std::string name) {
    return FiniteLattice::from_poset(FinitePoset::from_covers(std::move(labels), covers),
                                     std::move(name));
}

FiniteLattice dual(const FiniteLattice& l) {
    return FiniteLattice::from_poset(l.poset().dual(), l.name().empty() ? "" : l.name() + "^d");
}

FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b) {
    const std::size_t nb = b.size();
    std::vector<std::string> labels;
    labels.reserve(a.size() * nb);
    for (Id x = 0; x < a.size(); ++x) {
        for (Id y = 0; y < nb; ++y) labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
    }
    auto p = FinitePoset::from_predicate(std::move(labels), [&](Id i, Id j) {
        return a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb);
    });
    std::string name;
    if (!a.name().empty() && !b.name().empty()) name = a.name() + "x" + b.name();
    return FiniteLattice::from_poset(std::move(p), std::move(name));
}

FiniteLattice power(const FiniteLattice& l, std::size_t exponent) {
    if (exponent == 0) throw FormatError("power exponent must be at least 1");
    const std::size_t n = l.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < exponent; ++i) total *= n;
    auto digits = [&](std::size_t code) {
        std::vector<Id> d(exponent);
        for (std::size_t i = exponent; i-- > 0;) {
            d[i] = static_cast<Id>(code % n);
            code /= n;
        }
        return d;
    };
    std::vector<std::vector<Id>> tuples(total);
    std::vector<std::string> labels(total);
    for (std::size_t c = 0; c < total; ++c) {
        tuples[c] = digits(c);
        std::string s = "(";
        for (std::size_t i = 0; i < exponent; ++i) s += (i ? "," : "") + l.label(tuples[c][i]);
        labels[c] = s + ")";
    }
    auto p = FinitePoset::from_predicate(std::move(labels), [&](Id i, Id j) {
        for (std::size_t k = 0; k < exponent; ++k) {
            if (!l.leq(tuples[i][k], tuples[j][k])) return false;
        }
        return true;
    });
    std::string name = l.name().empty() ? "" : l.name() + "^" + std::to_string(exponent);
    return FiniteLattice::from_poset(std::move(p), std::move(name));
}

FiniteLattice ideal_lattice(const JoinSemilattice& s) {
    // A non-empty finite down-set closed under joins has a largest element, so the ideals are
    // exactly the principal down-sets.
    std::vector<Bits> sets;
    std::vector<std::string> labels;
    for (Id x = 0; x < s.size(); ++x) {
        sets.push_back(s.poset().down(x));
        labels.push_back("(" + s.poset().label(x) + "]");
    }
    return lattice_of_sets(sets, std::move(labels));
}

FiniteLattice lattice_of_sets(const std::vector<Bits>& sets, std::vector<std::string> labels,
                              std::string name) {
    auto p = FinitePoset::from_predicate(std::move(labels),
                                         [&](Id i, Id j) { return sets[i].is_subset_of(sets[j]); });
    return FiniteLattice::from_poset(std::move(p), std::move(name));
}

}  // namespace latkit
