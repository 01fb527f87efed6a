#pragma once

#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

#include "latkit/boxprod.hpp"
#include "latkit/congruence.hpp"
#include "latkit/order.hpp"
#include "latkit/pairs.hpp"

namespace latkit {

using json = nlohmann::json;

/// {"name"?, "elements": [labels], "covers": [[i, j]]}
json to_json(const FinitePoset& p, const std::string& name = {});
json to_json(const FiniteLattice& l);

/// Reads the lattice format; extra keys are ignored. Throws FormatError, CyclicCovers, NotALattice.
FinitePoset poset_from_json(const json& j);
FiniteLattice lattice_from_json(const json& j);

/// Reads a whole JSON document from a path, or from `in` when the path is "-".
json read_json(const std::string& path, std::istream& in);

/// {"pairs": [[x, y]]} listing the members outside ⊥.
json bi_ideal_to_json(const PairGrid& g, const Bits& members);
/// Adds ⊥ to the listed pairs. Throws FormatError on out-of-range pairs.
Bits bi_ideal_from_json(const PairGrid& g, const json& j);

json to_json(const Congruence& c);
Congruence congruence_from_json(std::size_t n, const json& j);

json to_json(const PairGrid& g, const BoxElement& e);

json verdict_json(bool verdict);
json verdict_json(bool verdict, json witness);

}  // namespace latkit
