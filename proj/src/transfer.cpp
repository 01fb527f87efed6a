#include "latkit/transfer.hpp"

#include <algorithm>
#include <set>

#include "latkit/congruence.hpp"

namespace latkit {

bool dominated(const FinitePoset& p, const std::vector<Id>& x, const std::vector<Id>& y) {
    return std::all_of(x.begin(), x.end(), [&](Id a) {
        return std::any_of(y.begin(), y.end(), [&](Id b) { return p.leq(a, b); });
    });
}

namespace {

std::optional<Id> join_of(const JoinSemilattice& s, const std::vector<Id>& xs) {
    std::optional<Id> acc;
    for (Id x : xs) acc = acc ? s.join(*acc, x) : x;
    return acc;
}

}  // namespace

std::vector<MinimalPair> minimal_pairs(const JoinSemilattice& s) {
    const auto js = s.join_irreducibles();
    const std::size_t m = js.size();
    std::vector<MinimalPair> out;
    if (m < 3) return out;  // p ∉ I and |I| ≥ 2
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        if (__builtin_popcountll(mask) < 2) continue;
        std::vector<Id> in;
        for (std::size_t k = 0; k < m; ++k) {
            if (mask >> k & 1) in.push_back(js[k]);
        }
        const Id top = *join_of(s, in);
        // Every J ≪ I lies inside D, and enlarging J keeps p ≤ ⋁J, so minimality amounts to
        // p ≰ ⋁(D − {i}) for each i ∈ I.
        std::vector<Id> d;
        for (Id j : js) {
            if (dominated(s.poset(), {j}, in)) d.push_back(j);
        }
        for (std::size_t k = 0; k < m; ++k) {
            const Id p = js[k];
            if (mask >> k & 1 || !s.leq(p, top)) continue;
            bool minimal = true;
            for (Id i : in) {
                std::vector<Id> rest;
                for (Id j : d) {
                    if (j != i) rest.push_back(j);
                }
                auto r = join_of(s, rest);
                if (r && s.leq(p, *r)) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) out.push_back({p, in});
        }
    }
    std::sort(out.begin(), out.end(), [](const MinimalPair& x, const MinimalPair& y) {
        return x.p != y.p ? x.p < y.p : x.i < y.i;
    });
    return out;
}

TVerdict condition_t(const JoinSemilattice& s) {
    const auto js = s.join_irreducibles();
    const std::size_t n = s.size();
    std::vector<std::set<Id>> succ(n), pred(n);
    for (const auto& mp : minimal_pairs(s)) {
        for (Id j : mp.i) {
            succ[mp.p].insert(j);
            pred[j].insert(mp.p);
        }
    }
    TVerdict v;
    std::vector<std::size_t> indeg(n, 0);
    for (Id x : js) indeg[x] = pred[x].size();
    std::set<Id> ready;
    for (Id x : js) {
        if (indeg[x] == 0) ready.insert(x);
    }
    std::vector<bool> placed(n, false);
    while (!ready.empty()) {
        const Id x = *ready.begin();
        ready.erase(ready.begin());
        placed[x] = true;
        v.order.push_back(x);
        for (Id y : succ[x]) {
            if (--indeg[y] == 0) ready.insert(y);
        }
    }
    if (v.order.size() == js.size()) {
        v.holds = true;
        return v;
    }
    // Every unplaced node keeps an unplaced predecessor; walk backwards until a repeat.
    Id cur = 0;
    for (Id x : js) {
        if (!placed[x]) {
            cur = x;
            break;
        }
    }
    std::vector<Id> walk;
    std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
    while (pos[cur] == static_cast<std::size_t>(-1)) {
        pos[cur] = walk.size();
        walk.push_back(cur);
        for (Id q : pred[cur]) {
            if (!placed[q]) {
                cur = q;
                break;
            }
        }
    }
    std::vector<Id> cyc(walk.begin() + static_cast<std::ptrdiff_t>(pos[cur]), walk.end());
    std::reverse(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    v.order.clear();
    v.cycle = std::move(cyc);
    return v;
}

WhitmanVerdict whitman(const FiniteLattice& l) {
    const Id n = static_cast<Id>(l.size());
    for (Id x = 0; x < n; ++x) {
        for (Id y = 0; y < n; ++y) {
            const Id xy = l.meet(x, y);
            for (Id u = 0; u < n; ++u) {
                if (l.leq(xy, u)) continue;
                for (Id v = 0; v < n; ++v) {
                    const Id uv = l.join(u, v);
                    if (!l.leq(xy, uv) || l.leq(xy, v)) continue;
                    if (l.leq(x, uv) || l.leq(y, uv)) continue;
                    return {false, std::array<Id, 4>{x, y, u, v}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

Classification classify(const FiniteLattice& l) {
    Classification c;
    c.t_join = condition_t(JoinSemilattice::from_lattice(l)).holds;
    c.t_meet = condition_t(JoinSemilattice::meet_view(l)).holds;
    c.w = whitman(l).holds;
    c.sharply_transferable = c.t_join && c.t_meet && c.w;
    c.amenable = c.t_join;
    return c;
}

SpikeReport spike_analysis(const FinitePoset& p) {
    SpikeReport r;
    const auto maxi = p.maximal();
    for (Id b : maxi) {
        for (Id a : p.lower_covers(b)) {
            const bool only = std::none_of(maxi.begin(), maxi.end(), [&](Id c) { return c != b && p.leq(a, c); });
            if (only) r.spikes.emplace_back(a, b);
        }
    }
    std::sort(r.spikes.begin(), r.spikes.end());
    r.spike_free = r.spikes.empty();
    return r;
}

FinitePoset join_irreducible_poset(const FiniteLattice& d) {
    return d.poset().subposet(join_irreducible_ids(d));
}

bool con_of_amenable_representable(const FiniteLattice& d) {
    if (!is_distributive(d).distributive) throw NotDistributive("input lattice is not distributive");
    return spike_analysis(join_irreducible_poset(d)).spike_free;
}

JiConReport ji_con_bijection(const FiniteLattice& l, const Limits& lim) {
    JiConReport r;
    const auto cl = con_lattice(l, lim);
    std::vector<bool> hit(cl.congruences.size(), false);
    bool injective = true;
    for (const auto& j : join_irreducibles(l)) {
        const Id idx = *cl.find(principal_congruence(l, j.cover, j.element));
        if (hit[idx]) injective = false;
        hit[idx] = true;
        r.map.emplace_back(j.element, idx);
    }
    r.bijection = injective && r.map.size() == cl.join_irreducibles.size();
    return r;
}

std::vector<Id> generated_sublattice(const FiniteLattice& l, const std::vector<Id>& gens) {
    Bits in(l.size());
    std::vector<Id> members;
    for (Id g : gens) {
        if (!in.test(g)) {
            in.set(g);
            members.push_back(g);
        }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            for (Id z : {l.join(members[i], members[j]), l.meet(members[i], members[j])}) {
                if (!in.test(z)) {
                    in.set(z);
                    members.push_back(z);
                }
            }
        }
    }
    return bits_to_ids(in);
}

PartialAmenability partial_amenability(const FiniteLattice& l, std::size_t k) {
    PartialAmenability r;
    std::set<std::vector<Id>> seen;
    std::vector<Id> gens;
    auto rec = [&](auto&& self, Id start) -> bool {
        if (!gens.empty()) {
            auto sub = generated_sublattice(l, gens);
            if (seen.insert(sub).second) {
                ++r.sublattices_checked;
                auto s = FiniteLattice::from_poset(l.poset().subposet(sub));
                if (!condition_t(JoinSemilattice::from_lattice(s)).holds) {
                    r.all_pass = false;
                    r.failing_generators = gens;
                    return false;
                }
            }
        }
        if (gens.size() == k) return true;
        for (Id x = start; x < l.size(); ++x) {
            gens.push_back(x);
            const bool ok = self(self, x + 1);
            gens.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    rec(rec, 0);
    return r;
}

}  // namespace latkit
