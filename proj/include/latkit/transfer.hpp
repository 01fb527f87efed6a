#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latkit/order.hpp"

namespace latkit {

/// ⟨p, I⟩ with p ≤ ⋁I and no J ≪ I with p ≤ ⋁J missing a member of I.
struct MinimalPair {
    Id p;
    std::vector<Id> i;
    bool operator==(const MinimalPair& o) const { return p == o.p && i == o.i; }
};

/// X ≪ Y: every x ∈ X lies below some y ∈ Y.
bool dominated(const FinitePoset& p, const std::vector<Id>& x, const std::vector<Id>& y);

/// Every minimal pair, ordered by p and then by the sorted id list of I.
std::vector<MinimalPair> minimal_pairs(const JoinSemilattice& s);

struct TVerdict {
    bool holds = false;
    /// A linear order of J(S) (lowest id first among the available) when the condition holds.
    std::vector<Id> order;
    /// Otherwise a cycle c0 -> c1 -> ... -> c0 of the constraint digraph (c0 not repeated).
    std::vector<Id> cycle;
};

/// Condition (T): J(S) admits a linear order with p before every j ∈ I for each minimal pair.
TVerdict condition_t(const JoinSemilattice& s);

struct WhitmanVerdict {
    bool holds = false;
    /// Lexicographically least (x, y, u, v) violating (W).
    std::optional<std::array<Id, 4>> witness;
};

WhitmanVerdict whitman(const FiniteLattice& l);

struct Classification {
    bool t_join = false;
    bool t_meet = false;
    bool w = false;
    bool sharply_transferable = false;
    bool amenable = false;
};

Classification classify(const FiniteLattice& l);

struct SpikeReport {
    /// Pairs (a, b) with b maximal, b covering a and b the only maximal element above a.
    std::vector<std::pair<Id, Id>> spikes;
    bool spike_free = true;
};

SpikeReport spike_analysis(const FinitePoset& p);

/// J(D) as a poset (element i is the i-th join-irreducible of D in id order).
FinitePoset join_irreducible_poset(const FiniteLattice& d);

/// Whether D is the congruence lattice of some amenable lattice. Throws NotDistributive.
bool con_of_amenable_representable(const FiniteLattice& d);

struct JiConReport {
    bool bijection = false;
    /// For each join-irreducible a (in id order), the index in con_lattice(l) of Θ(a_*, a).
    std::vector<std::pair<Id, Id>> map;
};

JiConReport ji_con_bijection(const FiniteLattice& l, const Limits& lim = {});

struct PartialAmenability {
    bool all_pass = true;
    std::size_t sublattices_checked = 0;
    /// Generators of the first sublattice failing (T∨).
    std::optional<std::vector<Id>> failing_generators;
};

/// Partial check: (T∨) for every sublattice generated by at most k elements. Not a verdict on
/// amenability of an infinite lattice; the input only provides the finite generated pieces.
PartialAmenability partial_amenability(const FiniteLattice& l, std::size_t k);

/// Sublattice generated by `gens` as a sorted id list.
std::vector<Id> generated_sublattice(const FiniteLattice& l, const std::vector<Id>& gens);

}  // namespace latkit
