#include <set>

#include "doctest.h"

#include "latkit/boxprod.hpp"
#include "latkit/catalog.hpp"
#include "latkit/congruence.hpp"
#include "latkit/errors.hpp"
#include "latkit/isomorphism.hpp"
#include "latkit/tensor.hpp"
#include "oracle.hpp"

using namespace latkit;

namespace {

oracle::Subset to_subset(const Bits& b) {
    oracle::Subset s(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) s[i] = b.test(i);
    return s;
}

/// Least member of `family` containing s.
std::optional<oracle::Subset> least_in(const std::vector<oracle::Subset>& family, const oracle::Subset& s) {
    std::optional<oracle::Subset> best;
    for (const auto& f : family) {
        if (!oracle::subset_of(s, f)) continue;
        if (!best || oracle::subset_of(f, *best)) best = f;
    }
    return best;
}

}  // namespace

TEST_SUITE("boxprod") {

TEST_CASE("A□B is exactly the family of finite intersections of a□b") {
    for (const auto& a : lattice_catalog(4)) {
        for (const auto& b : lattice_catalog(4)) {
            const auto box = box_product(a, b);
            std::set<oracle::Subset> mine;
            for (const auto& e : box.elements()) mine.insert(to_subset(e));
            const auto brute = oracle::all_box_elements(a, b);
            REQUIRE(mine == std::set<oracle::Subset>(brute.begin(), brute.end()));
        }
    }
}

TEST_CASE("box elements carry irredundant witnesses") {
    const auto box = box_product(named_family_from_string("N5"), named_family_from_string("M3"), Limits{25, 100000});
    for (const auto& e : box.elements()) {
        const auto w = box_element(box.grid(), e);
        Bits acc = box.grid().full();
        for (auto [x, y] : w.witness) acc &= box_set(box.grid(), x, y);
        CHECK(acc == e);
        // The full set keeps one witness term rather than an empty list.
        if (w.witness.size() == 1 && e == box.grid().full()) continue;
        for (std::size_t drop = 0; drop < w.witness.size(); ++drop) {
            Bits partial = box.grid().full();
            for (std::size_t k = 0; k < w.witness.size(); ++k) {
                if (k != drop) partial &= box_set(box.grid(), w.witness[k].first, w.witness[k].second);
            }
            CHECK(partial != e);
        }
    }
    Bits single = box.grid().empty();
    single.set(box.grid().index(1, 1));
    CHECK_THROWS_AS(box_element(box.grid(), single), FormatError);
}

TEST_CASE("closure formula on random boxdot elements") {
    oracle::SplitMix rng(41);
    const auto a = named_family_from_string("N5");
    const auto b = named_family_from_string("C3");
    const PairGrid g(a, b);
    const auto family = oracle::all_box_elements(a, b);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::pair<Id, Id>> boxes, circs;
        const std::size_t m = 1 + rng.below(3), n = rng.below(4);
        for (std::size_t i = 0; i < m; ++i) boxes.emplace_back(rng.below(a.size()), rng.below(b.size()));
        for (std::size_t i = 0; i < n; ++i) circs.emplace_back(rng.below(a.size()), rng.below(b.size()));
        const auto h = boxdot_element(g, boxes, circs);
        const auto closed = box_closure(g, h);
        const auto expect = least_in(family, to_subset(h.extent));
        REQUIRE(expect.has_value());
        CHECK(to_subset(closed.extent) == *expect);
    }
    CHECK_THROWS_AS(boxdot_element(g, {}, {{1, 1}}), FormatError);
}

TEST_CASE("joins by formula equal least upper bounds") {
    const auto box = box_product(named_family_from_string("N5"), named_family_from_string("M3"), Limits{25, 100000});
    const auto& l = box.lattice();
    for (Id x = 0; x < box.size(); ++x) {
        for (Id y = 0; y < box.size(); ++y) {
            const auto h = box_element(box.grid(), box.element(x));
            const auto k = box_element(box.grid(), box.element(y));
            CHECK(box_join_by_formula(box.grid(), h, k).extent == box.element(l.join(x, y)));
        }
    }
}

TEST_CASE("lattice tensor product and bound visibility") {
    const auto n5 = named_family_from_string("N5");
    const auto c3 = named_family_from_string("C3");
    // Finite factors have units, so every element is confined.
    CHECK(lattice_tensor_product(n5, c3).set.size() == box_product(n5, c3).size());
    const BoundFlags no_unit{true, false};
    const auto lt = lattice_tensor_product(c3, c3, Limits{}, no_unit, no_unit);
    CHECK(lt.set.size() < box_product(c3, c3).size());
    CHECK(lt.cases[0]);
    CHECK_FALSE(lt.cases[2]);
    for (const auto& e : lt.set.elements()) CHECK(box_product(c3, c3).find(e).has_value());
    const BoundFlags unbounded{false, false};
    CHECK_THROWS_AS(lattice_tensor_product(c3, c3, Limits{}, unbounded, unbounded), EmptyResult);
    // The top of N5 is a join of two elements, so N5 without its unit is not a lattice.
    CHECK_THROWS_AS(lattice_tensor_product(n5, c3, Limits{}, no_unit, no_unit), FormatError);
}

TEST_CASE("M3⊠C2 ≅ M3 and the triple constructions") {
    const auto m3 = named_family_from_string("M3");
    const auto c2 = named_family_from_string("C2");
    CHECK(isomorphic(lattice_tensor_product(m3, c2).set.lattice(), m3));
    const auto ml = triples(c2, TripleKind::ml);
    CHECK(ml.triples.size() == 5);
    REQUIRE(ml.lattice.has_value());
    CHECK(isomorphic(*ml.lattice, m3));
    for (const auto& l : lattice_catalog(5)) {
        for (auto kind : {TripleKind::ml, TripleKind::m3bracket, TripleKind::n5bracket, TripleKind::nl}) {
            const auto t = triples(l, kind);
            const auto brute = oracle::triple_set(l, to_string(kind));
            CHECK(t.triples == brute);
        }
        const auto m = triples(l, TripleKind::ml).triples;
        const auto bal = triples(l, TripleKind::m3bracket).triples;
        CHECK(std::includes(bal.begin(), bal.end(), m.begin(), m.end()));
        CHECK(triples(l, TripleKind::n5bracket).lattice.has_value());
    }
    CHECK(parse_triple_kind("balanced") == TripleKind::m3bracket);
    CHECK_THROWS_AS(parse_triple_kind("pentagon"), FormatError);
}

TEST_CASE("structural theorems on small pairs") {
    const auto cat = lattice_catalog(4);
    for (const auto& a : cat) {
        for (const auto& b : cat) {
            const auto r = ltp_theorems(a, b);
            CHECK_MESSAGE(r.dual_iso, r.detail);
            CHECK_MESSAGE(r.dual_map, r.detail);
            CHECK_MESSAGE(r.capped_subtensor, r.detail);
            if (r.distributive_equality) CHECK(*r.distributive_equality);
            const auto mu = mu_iso(a, b);
            CHECK_MESSAGE(mu.verdict, mu.failure);
            CHECK(mu.formula_ii_iso);
            CHECK(mu.formula_iii_consistent);
        }
    }
}

TEST_CASE("triple isomorphisms") {
    for (const auto& l : lattice_catalog(5)) {
        const auto m = triple_iso_check(l, "m3", Limits{400, 100000});
        CHECK_MESSAGE(m.verdict, m.failure);
        const auto n = triple_iso_check(l, "n5", Limits{400, 100000});
        CHECK_MESSAGE(n.verdict, n.failure);
    }
}

TEST_CASE("embedding checks") {
    const auto m3 = named_family_from_string("M3");
    const auto n5 = named_family_from_string("N5");
    for (const auto& l : lattice_catalog(4)) {
        CHECK(embedding_check(l, l, EmbeddingKind::diagonal).verdict.verdict);
        CHECK(embedding_check(m3, l, EmbeddingKind::j).verdict.verdict);
        CHECK(embedding_check(m3, l, EmbeddingKind::j_s, m3.find_label("a")).verdict.verdict);
    }
    CHECK_THROWS_AS(embedding_check(n5, m3, EmbeddingKind::j), NotSimple);
    CHECK(parse_embedding_kind("j_s") == EmbeddingKind::j_s);
}

}  // TEST_SUITE
