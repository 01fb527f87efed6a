#include <set>

#include "doctest.h"

#include "latkit/catalog.hpp"
#include "latkit/congruence.hpp"
#include "latkit/errors.hpp"
#include "latkit/isomorphism.hpp"
#include "latkit/json_io.hpp"
#include "latkit/tensor.hpp"
#include "oracle.hpp"

using namespace latkit;

namespace {

/// |D ⊗ E| for finite distributive D, E: down-sets of J(D) × J(E).
std::size_t distributive_tensor_size(const FiniteLattice& d, const FiniteLattice& e) {
    std::vector<Id> jd, je;
    for (Id x = 0; x < d.size(); ++x) {
        if (d.poset().lower_covers(x).size() == 1) jd.push_back(x);
    }
    for (Id y = 0; y < e.size(); ++y) {
        if (e.poset().lower_covers(y).size() == 1) je.push_back(y);
    }
    std::vector<std::pair<Id, Id>> cells;
    for (Id x : jd) {
        for (Id y : je) cells.emplace_back(x, y);
    }
    REQUIRE(cells.size() <= 20);
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << cells.size()); ++mask) {
        bool down = true;
        for (std::size_t i = 0; i < cells.size() && down; ++i) {
            if (!(mask >> i & 1)) continue;
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (d.leq(cells[k].first, cells[i].first) && e.leq(cells[k].second, cells[i].second) &&
                    !(mask >> k & 1)) {
                    down = false;
                    break;
                }
            }
        }
        count += down;
    }
    return count;
}

bool brute_permutable(const FiniteLattice& l) {
    const auto cons = oracle::all_congruences(l);
    const std::size_t n = l.size();
    auto compose = [&](const std::vector<Id>& a, const std::vector<Id>& b) {
        std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
        for (Id x = 0; x < n; ++x) {
            for (Id y = 0; y < n; ++y) {
                for (Id z = 0; z < n; ++z) {
                    if (a[x] == a[y] && b[y] == b[z]) r[x][z] = true;
                }
            }
        }
        return r;
    };
    for (const auto& a : cons) {
        for (const auto& b : cons) {
            if (compose(a, b) != compose(b, a)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("congruence") {

TEST_CASE("Con L equals the brute-force set of compatible partitions") {
    auto lats = lattice_catalog(6);
    oracle::SplitMix rng(21);
    for (int i = 0; i < 15; ++i) lats.push_back(oracle::random_closure_lattice(rng, 3, 2 + rng.below(4)));
    for (const auto& l : lats) {
        const auto cl = con_lattice(l);
        std::set<std::vector<Id>> mine;
        for (const auto& c : cl.congruences) mine.insert(c.block_of());
        const auto brute = oracle::all_congruences(l);
        REQUIRE(mine == std::set<std::vector<Id>>(brute.begin(), brute.end()));
        CHECK(cl.congruences.front().is_identity());
        CHECK(cl.congruences.back().is_full());
        CHECK(cl.simple == (brute.size() == 2));
        CHECK(is_distributive(cl.lattice).distributive);
    }
}

TEST_CASE("principal congruences match the naive fixpoint") {
    for (const auto& l : lattice_catalog(6)) {
        for (Id a = 0; a < l.size(); ++a) {
            for (Id b = a + 1; b < l.size(); ++b) {
                const auto naive = oracle::matrix_to_blocks(oracle::naive_principal(l, a, b));
                REQUIRE(principal_congruence(l, a, b).block_of() == naive);
            }
        }
    }
}

TEST_CASE("known congruence lattices") {
    CHECK(isomorphic(con_lattice(named_family_from_string("C3")).lattice, named_family_from_string("B2")));
    CHECK(con_lattice(named_family_from_string("M3")).simple);
    CHECK(con_lattice(named_family_from_string("N5")).congruences.size() == 5);
    CHECK(isomorphic(con_lattice(named_family_from_string("B3")).lattice, named_family_from_string("B3")));
}

TEST_CASE("partition operations") {
    const Congruence a(std::vector<Id>{0, 0, 1, 2});
    const Congruence b(std::vector<Id>{5, 7, 7, 9});
    CHECK(b.block_of() == std::vector<Id>{0, 1, 1, 2});
    CHECK(join(a, b).block_of() == std::vector<Id>{0, 0, 0, 1});
    CHECK(meet(a, b).is_identity());
    CHECK(a.refines(join(a, b)));
    CHECK(a.label() == "0,1|2|3");
    CHECK(congruence_from_json(4, to_json(a)) == a);
}

TEST_CASE("join-irreducible congruences are the Θ(j_*, j)") {
    for (const auto& l : lattice_catalog(6)) {
        const auto cl = con_lattice(l);
        std::set<std::vector<Id>> ji;
        for (Id i : cl.join_irreducibles) ji.insert(cl.congruences[i].block_of());
        std::set<std::vector<Id>> mine;
        for (const auto& c : join_irreducible_congruences(l)) mine.insert(c.block_of());
        CHECK(mine == ji);
    }
}

TEST_CASE("Con(A⊗B) has the size of Con A ⊗ Con B") {
    const auto cat = lattice_catalog(4);
    for (const auto& a : cat) {
        for (const auto& b : cat) {
            const auto t = tensor_product(a, b);
            const auto ca = con_lattice(a), cb = con_lattice(b);
            CHECK(oracle::count_congruences(t.lattice()) == distributive_tensor_size(ca.lattice, cb.lattice));
            const auto r = glq_isomorphism_check(a, b);
            CHECK_MESSAGE(r.verdict, r.failure);
        }
    }
    const auto n5 = named_family_from_string("N5");
    const auto m3 = named_family_from_string("M3");
    const auto t = tensor_product(n5, m3, Limits{25, 100000});
    CHECK(oracle::count_congruences(t.lattice()) ==
          distributive_tensor_size(con_lattice(n5).lattice, con_lattice(m3).lattice));
}

TEST_CASE("box and odot congruences are congruences of A⊗B") {
    const auto a = named_family_from_string("N5");
    const auto b = named_family_from_string("C3");
    const auto t = tensor_product(a, b);
    for (const auto& alpha : con_lattice(a).congruences) {
        for (const auto& beta : con_lattice(b).congruences) {
            const auto box = cong_box_tensor(t, alpha, beta, BoxKind::box);
            const auto odot = cong_box_tensor(t, alpha, beta, BoxKind::odot);
            CHECK(is_congruence(t.lattice(), box));
            CHECK(is_congruence(t.lattice(), odot));
            CHECK(odot.refines(box));
        }
    }
}

TEST_CASE("permutability agrees with relational composition") {
    for (const auto& l : lattice_catalog(6)) CHECK(permutable(l).permutable == brute_permutable(l));
    CHECK(permutable(named_family_from_string("M3")).permutable);
    CHECK_FALSE(permutable(named_family_from_string("C3")).permutable);
}

TEST_CASE("the family of all bi-ideals is a sub-tensor product") {
    const auto t = tensor_product(named_family_from_string("N5"), named_family_from_string("C3"));
    const auto v = is_sub_tensor_product(t, t.elements());
    CHECK(v.verdict);
    CHECK(v.all_capped);
    std::vector<Bits> only_bottom{bottom_tensor(t.grid()).members};
    CHECK_FALSE(is_sub_tensor_product(t, only_bottom).verdict);
}

TEST_CASE("congruence-preserving checks validate the embedding") {
    const auto c2 = named_family_from_string("C2");
    const auto m3 = named_family_from_string("M3");
    // 0 < 1 onto 0 < 1 of M3: every congruence of M3 restricts, and M3 is simple.
    CHECK(cong_preserving_check(c2, m3, {m3.zero(), m3.one()}).verdict);
    CHECK_THROWS_AS(validate_embedding(c2, m3, {m3.one(), m3.zero()}), NotAnEmbedding);
    const auto b2 = named_family_from_string("B2");
    CHECK_FALSE(cong_preserving_check(c2, b2, {b2.zero(), b2.one()}).verdict);
}

}  // TEST_SUITE
