#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latkit/order.hpp"

namespace latkit {

/// Canonical labelled instances: "Bn" (Boolean, 2^n elements), "Cn" (n-element chain), "M3",
/// "N5" (0 < c < a < 1, 0 < b < 1) and "W7" (0 < u,v < m < x,y < 1). Throws UnknownFamily.
FiniteLattice named_family(const std::string& name, std::size_t n = 0);

/// Parses "B3", "C4", "M3", ... into a named_family call.
FiniteLattice named_family_from_string(const std::string& text);

/// One representative of every isomorphism class of lattices with 1..max_size elements, ordered
/// by size then discovery order. Named "L<size>_<index>".
std::vector<FiniteLattice> lattice_catalog(std::size_t max_size);

using Rng = std::mt19937_64;

/// Random lattice with exactly `size` elements, realised as an intersection-closed family of
/// subsets of a `ground`-element set that contains the full set. ground == 0 picks size - 1.
FiniteLattice random_lattice(std::size_t size, Rng& rng, std::size_t ground = 0);

/// Uniform draw in [0, bound) that does not depend on the standard library's distributions.
inline std::uint64_t draw(Rng& rng, std::uint64_t bound) { return bound ? rng() % bound : 0; }

}  // namespace latkit
