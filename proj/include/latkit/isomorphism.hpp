#pragma once

#include <optional>
#include <vector>

#include "latkit/order.hpp"

namespace latkit {

/// Searches for an order isomorphism A -> B. The result maps each id of A to an id of B.
/// The search is deterministic: join-irreducibles of A are assigned in increasing id order and
/// candidates in B are tried lowest id first. The rest of the map is forced by joins.
std::optional<std::vector<Id>> find_isomorphism(const FiniteLattice& a, const FiniteLattice& b);

inline bool isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
    return find_isomorphism(a, b).has_value();
}

/// Cheap invariant; equal keys are necessary for isomorphism.
std::vector<std::size_t> iso_invariant(const FiniteLattice& l);

}  // namespace latkit
