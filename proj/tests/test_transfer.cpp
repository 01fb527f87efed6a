#include <map>
#include <set>

#include "doctest.h"

#include "latkit/catalog.hpp"
#include "latkit/errors.hpp"
#include "latkit/transfer.hpp"
#include "oracle.hpp"

using namespace latkit;

namespace {

std::vector<Id> members(const std::vector<Id>& ji, std::uint64_t mask) {
    std::vector<Id> out;
    for (std::size_t i = 0; i < ji.size(); ++i) {
        if (mask >> i & 1) out.push_back(ji[i]);
    }
    return out;
}

bool below_all(const FiniteLattice& l, const std::vector<Id>& x, const std::vector<Id>& y) {
    for (Id a : x) {
        bool found = false;
        for (Id b : y) found = found || l.leq(a, b);
        if (!found) return false;
    }
    return true;
}

/// Minimal pairs straight from the definition: scan every I and every J ≪ I.
std::set<std::pair<Id, std::vector<Id>>> brute_minimal_pairs(const FiniteLattice& l) {
    std::vector<Id> ji;
    for (Id x = 0; x < l.size(); ++x) {
        if (l.poset().lower_covers(x).size() == 1) ji.push_back(x);
    }
    std::set<std::pair<Id, std::vector<Id>>> out;
    const std::uint64_t subsets = 1ULL << ji.size();
    for (Id p : ji) {
        for (std::uint64_t im = 0; im < subsets; ++im) {
            const auto i = members(ji, im);
            if (i.size() < 2 || std::find(i.begin(), i.end(), p) != i.end()) continue;
            if (!l.leq(p, l.join_all(i))) continue;
            bool minimal = true;
            for (std::uint64_t jm = 0; jm < subsets && minimal; ++jm) {
                const auto j = members(ji, jm);
                if (!below_all(l, j, i) || !l.leq(p, l.join_all(j))) continue;
                if ((im & ~jm) != 0) minimal = false;
            }
            if (minimal) out.insert({p, i});
        }
    }
    return out;
}

bool brute_whitman(const FiniteLattice& l) {
    const std::size_t n = l.size();
    for (Id x = 0; x < n; ++x) {
        for (Id y = 0; y < n; ++y) {
            for (Id u = 0; u < n; ++u) {
                for (Id v = 0; v < n; ++v) {
                    const Id lo = l.meet(x, y), hi = l.join(u, v);
                    if (!l.leq(lo, hi)) continue;
                    if (!l.leq(x, hi) && !l.leq(y, hi) && !l.leq(lo, u) && !l.leq(lo, v)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("minimal pairs match the literal definition") {
    auto lats = lattice_catalog(7);
    oracle::SplitMix rng(31);
    for (int i = 0; i < 20; ++i) lats.push_back(oracle::random_closure_lattice(rng, 4, 3 + rng.below(4)));
    for (const auto& l : lats) {
        std::set<std::pair<Id, std::vector<Id>>> mine;
        for (const auto& m : minimal_pairs(JoinSemilattice::from_lattice(l))) mine.insert({m.p, m.i});
        REQUIRE(mine == brute_minimal_pairs(l));
    }
}

TEST_CASE("condition (T) orders respect every minimal pair, cycles are real") {
    for (const auto& l : lattice_catalog(7)) {
        for (const auto& s : {JoinSemilattice::from_lattice(l), JoinSemilattice::meet_view(l)}) {
            const auto pairs = minimal_pairs(s);
            const auto t = condition_t(s);
            if (t.holds) {
                std::map<Id, std::size_t> pos;
                for (std::size_t k = 0; k < t.order.size(); ++k) pos[t.order[k]] = k;
                CHECK(t.order.size() == s.join_irreducibles().size());
                for (const auto& m : pairs) {
                    for (Id j : m.i) CHECK(pos.at(m.p) < pos.at(j));
                }
            } else {
                REQUIRE(t.cycle.size() >= 2);
                for (std::size_t k = 0; k < t.cycle.size(); ++k) {
                    const Id from = t.cycle[k], to = t.cycle[(k + 1) % t.cycle.size()];
                    bool edge = false;
                    for (const auto& m : pairs) {
                        edge = edge || (m.p == from && std::find(m.i.begin(), m.i.end(), to) != m.i.end());
                    }
                    CHECK(edge);
                }
            }
        }
    }
}

TEST_CASE("Whitman scan agrees with brute force and returns a valid witness") {
    for (const auto& l : lattice_catalog(7)) {
        const auto w = whitman(l);
        REQUIRE(w.holds == brute_whitman(l));
        if (!w.holds) {
            auto [x, y, u, v] = *w.witness;
            const Id lo = l.meet(x, y), hi = l.join(u, v);
            CHECK(l.leq(lo, hi));
            CHECK_FALSE(l.leq(x, hi));
            CHECK_FALSE(l.leq(y, hi));
            CHECK_FALSE(l.leq(lo, u));
            CHECK_FALSE(l.leq(lo, v));
        }
    }
    CHECK_FALSE(whitman(named_family_from_string("W7")).holds);
}

TEST_CASE("classification ground truths") {
    const auto n5 = classify(named_family_from_string("N5"));
    CHECK(n5.sharply_transferable);
    CHECK(n5.amenable);
    const auto m3 = classify(named_family_from_string("M3"));
    CHECK_FALSE(m3.sharply_transferable);
    CHECK_FALSE(m3.amenable);
    // (T∨) alone decides amenability; sharp transferability also needs (T∧) and (W).
    for (const auto& l : lattice_catalog(6)) {
        const auto c = classify(l);
        CHECK(c.amenable == c.t_join);
        CHECK(c.sharply_transferable == (c.t_join && c.t_meet && c.w));
        if (is_distributive(l).distributive) CHECK(c.amenable);
    }
}

TEST_CASE("spikes") {
    const auto chain = FinitePoset::from_covers({"0", "1"}, {{0, 1}});
    const auto r = spike_analysis(chain);
    CHECK_FALSE(r.spike_free);
    REQUIRE(r.spikes.size() == 1);
    CHECK(r.spikes[0] == std::pair<Id, Id>{0, 1});
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
        CHECK(spike_analysis(FinitePoset::from_covers(labels, {})).spike_free);
    }
    // A "V" shape: 0 below two maximal elements, so neither cover is a spike.
    CHECK(spike_analysis(FinitePoset::from_covers({"0", "a", "b"}, {{0, 1}, {0, 2}})).spike_free);
}

TEST_CASE("representability of distributive lattices") {
    CHECK_FALSE(con_of_amenable_representable(named_family_from_string("C3")));
    CHECK(con_of_amenable_representable(named_family_from_string("B2")));
    CHECK(con_of_amenable_representable(named_family_from_string("C2")));
    CHECK_THROWS_AS(con_of_amenable_representable(named_family_from_string("M3")), NotDistributive);
    CHECK(join_irreducible_poset(named_family_from_string("C3")).size() == 2);
}

TEST_CASE("J(A) and J(Con A) correspond for amenable lattices") {
    for (const auto& l : lattice_catalog(6)) {
        if (!classify(l).amenable) continue;
        const auto r = ji_con_bijection(l);
        CHECK(r.bijection);
    }
}

TEST_CASE("generated sublattices and the partial check") {
    const auto m3 = named_family_from_string("M3");
    const auto sub = generated_sublattice(m3, {m3.find_label("a"), m3.find_label("b")});
    CHECK(sub.size() == 4);
    CHECK(partial_amenability(named_family_from_string("N5"), 3).all_pass);
    const auto p = partial_amenability(m3, 3);
    CHECK_FALSE(p.all_pass);
    CHECK(p.failing_generators.has_value());
}

}  // TEST_SUITE
