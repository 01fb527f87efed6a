#include <numeric>
#include <sstream>

#include "doctest.h"

#include "latkit/catalog.hpp"
#include "latkit/errors.hpp"
#include "latkit/isomorphism.hpp"
#include "latkit/json_io.hpp"
#include "oracle.hpp"

using namespace latkit;

namespace {

/// Same lattice with ids shuffled.
FiniteLattice relabel(const FiniteLattice& l, oracle::SplitMix& rng) {
    std::vector<Id> perm(l.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<std::string> labels(l.size());
    for (Id x = 0; x < l.size(); ++x) labels[perm[x]] = l.label(x);
    std::vector<std::pair<Id, Id>> covers;
    for (auto [x, y] : l.poset().covers()) covers.emplace_back(perm[x], perm[y]);
    return build_lattice(labels, covers);
}

void check_tables(const FiniteLattice& l) {
    for (Id x = 0; x < l.size(); ++x) {
        for (Id y = 0; y < l.size(); ++y) {
            REQUIRE(static_cast<long>(l.join(x, y)) == oracle::lub(l.poset(), x, y));
            REQUIRE(static_cast<long>(l.meet(x, y)) == oracle::glb(l.poset(), x, y));
        }
    }
}

}  // namespace

TEST_SUITE("core_order") {

TEST_CASE("catalog class counts match the known sequence") {
    const auto cat = lattice_catalog(8);
    std::vector<std::size_t> counts(9, 0);
    for (const auto& l : cat) ++counts[l.size()];
    for (std::size_t n = 1; n <= 8; ++n) CHECK(counts[n] == oracle::lattice_counts[n]);
}

TEST_CASE("catalog entries are pairwise non-isomorphic") {
    const auto cat = lattice_catalog(6);
    for (std::size_t i = 0; i < cat.size(); ++i) {
        for (std::size_t j = i + 1; j < cat.size(); ++j) {
            if (cat[i].size() == cat[j].size()) REQUIRE_FALSE(isomorphic(cat[i], cat[j]));
        }
    }
}

TEST_CASE("join and meet tables agree with the order") {
    for (const auto& l : lattice_catalog(6)) check_tables(l);
    oracle::SplitMix rng(11);
    for (int i = 0; i < 40; ++i) check_tables(oracle::random_closure_lattice(rng, 4, 3 + rng.below(5)));
}

TEST_CASE("is_lattice reports a pair without a bound") {
    auto p = FinitePoset::from_covers({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    const auto v = is_lattice(p);
    CHECK_FALSE(v.lattice);
    REQUIRE(v.witness.has_value());
    CHECK_THROWS_AS(FiniteLattice::from_poset(p), NotALattice);
    CHECK(is_lattice(named_family_from_string("N5").poset()).lattice);
}

TEST_CASE("cyclic covers are rejected") {
    CHECK_THROWS_AS(FinitePoset::from_covers({"a", "b"}, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("named families") {
    CHECK(named_family_from_string("B3").size() == 8);
    CHECK(named_family("Bn", 2).size() == 4);
    CHECK(named_family_from_string("C4").size() == 4);
    CHECK(named_family_from_string("M3").size() == 5);
    CHECK(named_family_from_string("N5").size() == 5);
    CHECK(named_family_from_string("W7").size() == 7);
    CHECK(is_distributive(named_family_from_string("B3")).distributive);
    CHECK_FALSE(is_distributive(named_family_from_string("M3")).distributive);
    CHECK_FALSE(is_distributive(named_family_from_string("N5")).distributive);
    CHECK_THROWS_AS(named_family_from_string("Q9"), UnknownFamily);
    const auto n5 = named_family_from_string("N5");
    CHECK(n5.leq(n5.find_label("c"), n5.find_label("a")));
    CHECK_FALSE(n5.poset().comparable(n5.find_label("b"), n5.find_label("a")));
}

TEST_CASE("distributivity witness is a real failure") {
    for (const auto& l : lattice_catalog(6)) {
        const auto v = is_distributive(l);
        bool brute = true;
        for (Id x = 0; x < l.size(); ++x) {
            for (Id y = 0; y < l.size(); ++y) {
                for (Id z = 0; z < l.size(); ++z) {
                    if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) brute = false;
                }
            }
        }
        REQUIRE(v.distributive == brute);
        if (!brute) {
            auto [x, y, z] = *v.witness;
            CHECK(l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)));
        }
    }
}

TEST_CASE("derived constructions") {
    const auto c2 = named_family_from_string("C2");
    const auto n5 = named_family_from_string("N5");
    CHECK(isomorphic(product(c2, c2), named_family_from_string("B2")));
    CHECK(isomorphic(power(c2, 3), named_family_from_string("B3")));
    CHECK(isomorphic(power(n5, 2), product(n5, n5)));
    for (const auto& l : lattice_catalog(6)) {
        CHECK(isomorphic(dual(dual(l)), l));
        CHECK(isomorphic(ideal_lattice(JoinSemilattice::from_lattice(l)), l));
    }
    CHECK(isomorphic(dual(n5), n5));
}

TEST_CASE("irreducibles have a unique cover") {
    for (const auto& l : lattice_catalog(6)) {
        for (const auto& j : join_irreducibles(l)) {
            REQUIRE(l.poset().lower_covers(j.element).size() == 1);
            CHECK(l.poset().lower_covers(j.element)[0] == j.cover);
        }
        std::size_t count = 0;
        for (Id x = 0; x < l.size(); ++x) count += l.poset().lower_covers(x).size() == 1;
        CHECK(join_irreducibles(l).size() == count);
        CHECK(meet_irreducibles(l).size() == join_irreducibles(dual(l)).size());
    }
}

TEST_CASE("isomorphism search finds validated maps on relabelled lattices") {
    oracle::SplitMix rng(3);
    for (const auto& l : lattice_catalog(7)) {
        const auto r = relabel(l, rng);
        const auto m = find_isomorphism(l, r);
        REQUIRE(m.has_value());
        CHECK(oracle::is_order_iso(l, r, *m));
    }
}

TEST_CASE("random lattices have the requested size and are reproducible") {
    for (std::size_t n = 1; n <= 9; ++n) {
        Rng a(42), b(42);
        const auto x = random_lattice(n, a);
        const auto y = random_lattice(n, b);
        CHECK(x.size() == n);
        CHECK(x.poset() == y.poset());
        check_tables(x);
    }
}

TEST_CASE("lattice JSON round trip") {
    for (const auto& l : lattice_catalog(5)) {
        const auto back = lattice_from_json(json::parse(to_json(l).dump()));
        CHECK(back.poset() == l.poset());
        CHECK(back.labels() == l.labels());
    }
    CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"elements": ["a"], "covers": [[0, 3]]})")), FormatError);
    CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"elements": ["a","b","c"], "covers": [[0,1],[0,2]]})")),
                    NotALattice);
    std::istringstream in(R"({"elements": ["0", "1"], "covers": [[0, 1]]})");
    CHECK(lattice_from_json(read_json("-", in)).size() == 2);
}

}  // TEST_SUITE
