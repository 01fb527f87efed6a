#pragma once

// Brute-force reference implementations for the tests. They work straight from the definitions
// and share nothing with the library beyond FiniteLattice's order relation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "latkit/order.hpp"

namespace oracle {

using latkit::FiniteLattice;
using latkit::FinitePoset;
using latkit::Id;

/// splitmix64; deliberately not the library's generator.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(next() % n) : 0; }
    bool coin() { return next() & 1; }
};

/// Least upper bound found by scanning the order; -1 when there is none.
inline long lub(const FinitePoset& p, Id x, Id y) {
    long best = -1;
    for (Id z = 0; z < p.size(); ++z) {
        if (!p.leq(x, z) || !p.leq(y, z)) continue;
        bool least = true;
        for (Id w = 0; w < p.size() && least; ++w) {
            if (p.leq(x, w) && p.leq(y, w) && !p.leq(z, w)) least = false;
        }
        if (least) best = z;
    }
    return best;
}

inline long glb(const FinitePoset& p, Id x, Id y) { return lub(p.dual(), x, y); }

/// Lattice of an intersection-closed family over a small ground set, with the full set added.
inline FiniteLattice random_closure_lattice(SplitMix& rng, std::size_t ground, std::size_t generators) {
    const std::uint32_t full = (1u << ground) - 1;
    std::set<std::uint32_t> fam{full};
    for (std::size_t i = 0; i < generators; ++i) fam.insert(static_cast<std::uint32_t>(rng.next()) & full);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<std::uint32_t> cur(fam.begin(), fam.end());
        for (auto a : cur) {
            for (auto b : cur) grew |= fam.insert(a & b).second;
        }
    }
    const std::vector<std::uint32_t> sets(fam.begin(), fam.end());
    std::vector<std::string> labels;
    for (auto s : sets) labels.push_back("s" + std::to_string(s));
    auto p = FinitePoset::from_predicate(labels, [&](Id x, Id y) { return (sets[x] & ~sets[y]) == 0; });
    return FiniteLattice::from_poset(std::move(p), "closure");
}

/// Calls f(block_of) for every partition of 0..n-1 (restricted growth strings).
inline void each_partition(std::size_t n, const std::function<void(const std::vector<Id>&)>& f) {
    std::vector<Id> rgs(n, 0);
    std::function<void(std::size_t, Id)> rec = [&](std::size_t i, Id max_block) {
        if (i == n) {
            f(rgs);
            return;
        }
        for (Id b = 0; b <= max_block + 1; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(max_block, b));
        }
    };
    if (n == 0) {
        f(rgs);
        return;
    }
    rgs[0] = 0;
    rec(1, 0);
}

inline bool compatible(const FiniteLattice& l, const std::vector<Id>& block) {
    const std::size_t n = l.size();
    for (Id x = 0; x < n; ++x) {
        for (Id y = 0; y < n; ++y) {
            if (block[x] != block[y]) continue;
            for (Id z = 0; z < n; ++z) {
                if (block[l.join(x, z)] != block[l.join(y, z)]) return false;
                if (block[l.meet(x, z)] != block[l.meet(y, z)]) return false;
            }
        }
    }
    return true;
}

/// Every congruence of l as a restricted growth string. Only for |l| <= 9 or so.
inline std::vector<std::vector<Id>> all_congruences(const FiniteLattice& l) {
    std::vector<std::vector<Id>> out;
    each_partition(l.size(), [&](const std::vector<Id>& b) {
        if (compatible(l, b)) out.push_back(b);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Relation matrix of the least congruence containing (a, b), by naive fixpoint iteration.
inline std::vector<std::vector<bool>> naive_principal(const FiniteLattice& l, Id a, Id b) {
    const std::size_t n = l.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (Id x = 0; x < n; ++x) r[x][x] = true;
    r[a][b] = r[b][a] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        auto add = [&](Id x, Id y) {
            if (!r[x][y]) {
                r[x][y] = r[y][x] = true;
                changed = true;
            }
        };
        for (Id x = 0; x < n; ++x) {
            for (Id y = 0; y < n; ++y) {
                if (!r[x][y]) continue;
                for (Id z = 0; z < n; ++z) {
                    if (r[y][z]) add(x, z);
                    add(l.join(x, z), l.join(y, z));
                    add(l.meet(x, z), l.meet(y, z));
                }
            }
        }
    }
    return r;
}

inline std::vector<Id> matrix_to_blocks(const std::vector<std::vector<bool>>& r) {
    const std::size_t n = r.size();
    std::vector<Id> block(n, 0);
    Id next = 0;
    std::vector<bool> seen(n, false);
    for (Id x = 0; x < n; ++x) {
        if (seen[x]) continue;
        for (Id y = x; y < n; ++y) {
            if (r[x][y]) {
                seen[y] = true;
                block[y] = next;
            }
        }
        ++next;
    }
    return block;
}

/// Number of congruences, as joins of naive principal congruences. Works for larger lattices
/// than all_congruences.
inline std::size_t count_congruences(const FiniteLattice& l) {
    const std::size_t n = l.size();
    std::set<std::vector<Id>> principals;
    for (Id x = 0; x < n; ++x) {
        for (Id y : l.poset().upper_covers(x)) principals.insert(matrix_to_blocks(naive_principal(l, x, y)));
    }
    auto join_blocks = [n](const std::vector<Id>& p, const std::vector<Id>& q) {
        std::vector<Id> parent(n);
        for (Id i = 0; i < n; ++i) parent[i] = i;
        std::function<Id(Id)> find = [&](Id x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        for (Id i = 0; i < n; ++i) {
            for (Id j = i + 1; j < n; ++j) {
                if (p[i] == p[j] || q[i] == q[j]) parent[find(i)] = find(j);
            }
        }
        std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
        for (Id i = 0; i < n; ++i) {
            for (Id j = 0; j < n; ++j) r[i][j] = find(i) == find(j);
        }
        return matrix_to_blocks(r);
    };
    std::vector<Id> identity(n);
    for (Id i = 0; i < n; ++i) identity[i] = i;
    std::set<std::vector<Id>> all{identity};
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<std::vector<Id>> cur(all.begin(), all.end());
        for (const auto& c : cur) {
            for (const auto& p : principals) grew |= all.insert(join_blocks(c, p)).second;
        }
    }
    return all.size();
}

using Subset = std::vector<bool>;

/// Literal bi-ideal test over A×B (pair ⟨x,y⟩ at x*|B|+y).
inline bool is_bi_ideal(const FiniteLattice& a, const FiniteLattice& b, const Subset& s) {
    const std::size_t na = a.size(), nb = b.size();
    auto in = [&](Id x, Id y) { return s[x * nb + y]; };
    for (Id x = 0; x < na; ++x) {
        if (!in(x, b.zero())) return false;
    }
    for (Id y = 0; y < nb; ++y) {
        if (!in(a.zero(), y)) return false;
    }
    for (Id x = 0; x < na; ++x) {
        for (Id y = 0; y < nb; ++y) {
            if (!in(x, y)) continue;
            for (Id u = 0; u < na; ++u) {
                for (Id v = 0; v < nb; ++v) {
                    if (a.leq(u, x) && b.leq(v, y) && !in(u, v)) return false;
                }
            }
            for (Id u = 0; u < na; ++u) {
                if (in(u, y) && !in(a.join(x, u), y)) return false;
            }
            for (Id v = 0; v < nb; ++v) {
                if (in(x, v) && !in(x, b.join(y, v))) return false;
            }
        }
    }
    return true;
}

/// Every bi-ideal, by scanning subsets of A⁻×B⁻. Only for (|A|-1)(|B|-1) <= 16.
inline std::vector<Subset> all_bi_ideals(const FiniteLattice& a, const FiniteLattice& b) {
    std::vector<std::pair<Id, Id>> free;
    for (Id x = 0; x < a.size(); ++x) {
        for (Id y = 0; y < b.size(); ++y) {
            if (x != a.zero() && y != b.zero()) free.emplace_back(x, y);
        }
    }
    std::vector<Subset> out;
    for (std::uint64_t mask = 0; mask < (1ULL << free.size()); ++mask) {
        Subset s(a.size() * b.size(), false);
        for (Id x = 0; x < a.size(); ++x) s[x * b.size() + b.zero()] = true;
        for (Id y = 0; y < b.size(); ++y) s[a.zero() * b.size() + y] = true;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (mask >> i & 1) s[free[i].first * b.size() + free[i].second] = true;
        }
        if (is_bi_ideal(a, b, s)) out.push_back(std::move(s));
    }
    return out;
}

/// Every finite intersection of sets a□b (the empty intersection is A×B), by scanning all
/// subsets of A×B for Galois-closed ones. Only for |A|·|B| <= 16.
inline std::vector<Subset> all_box_elements(const FiniteLattice& a, const FiniteLattice& b) {
    const std::size_t na = a.size(), nb = b.size(), n = na * nb;
    std::vector<Subset> gens;
    for (Id x = 0; x < na; ++x) {
        for (Id y = 0; y < nb; ++y) {
            Subset g(n);
            for (Id u = 0; u < na; ++u) {
                for (Id v = 0; v < nb; ++v) g[u * nb + v] = a.leq(u, x) || b.leq(v, y);
            }
            gens.push_back(std::move(g));
        }
    }
    std::vector<Subset> out;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        Subset closed(n, true);
        for (const auto& g : gens) {
            bool contains = true;
            for (std::size_t i = 0; i < n && contains; ++i) {
                if ((mask >> i & 1) && !g[i]) contains = false;
            }
            if (!contains) continue;
            for (std::size_t i = 0; i < n; ++i) closed[i] = closed[i] && g[i];
        }
        bool equal = true;
        for (std::size_t i = 0; i < n && equal; ++i) equal = closed[i] == bool(mask >> i & 1);
        if (equal) out.push_back(std::move(closed));
    }
    return out;
}

inline bool subset_of(const Subset& x, const Subset& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] && !y[i]) return false;
    }
    return true;
}

/// Defining sets of the triple constructions: "m3bracket", "n5bracket", "mL", "nL".
inline std::vector<std::array<Id, 3>> triple_set(const FiniteLattice& l, const std::string& kind) {
    std::set<std::array<Id, 3>> out;
    const std::size_t n = l.size();
    for (Id u = 0; u < n; ++u) {
        for (Id v = 0; v < n; ++v) {
            for (Id w = 0; w < n; ++w) {
                if (kind == "m3bracket") {
                    if (l.meet(u, v) == l.meet(u, w) && l.meet(u, w) == l.meet(v, w)) out.insert({u, v, w});
                } else if (kind == "n5bracket") {
                    if (l.leq(l.meet(v, w), u) && l.leq(u, w)) out.insert({u, v, w});
                } else if (kind == "mL") {
                    out.insert({l.meet(v, w), l.meet(u, w), l.meet(u, v)});
                } else if (kind == "nL") {
                    out.insert({l.meet(v, w), l.meet(u, w), v});
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

/// Independent validation of a claimed isomorphism: bijective, order preserving and reflecting.
inline bool is_order_iso(const FiniteLattice& a, const FiniteLattice& b, const std::vector<Id>& m) {
    if (a.size() != b.size() || m.size() != a.size()) return false;
    std::vector<bool> hit(b.size(), false);
    for (Id x : m) {
        if (x >= b.size() || hit[x]) return false;
        hit[x] = true;
    }
    for (Id x = 0; x < a.size(); ++x) {
        for (Id y = 0; y < a.size(); ++y) {
            if (a.leq(x, y) != b.leq(m[x], m[y])) return false;
        }
    }
    return true;
}

/// Number of isomorphism classes of lattices with n elements, n = 0..8.
inline constexpr std::array<std::size_t, 9> lattice_counts{0, 1, 1, 1, 2, 5, 15, 53, 222};

}  // namespace oracle
