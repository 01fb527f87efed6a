#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latkit/order.hpp"
#include "latkit/pairs.hpp"
#include "latkit/tensor.hpp"

namespace latkit {

/// A lattice term over the generators x0..x{n-1}.
struct FreeTerm {
    enum class Kind { gen, join, meet };
    Kind kind = Kind::gen;
    Id gen = 0;
    std::vector<FreeTerm> children;

    static FreeTerm generator(Id i) { return {Kind::gen, i, {}}; }
    static FreeTerm join_of(std::vector<FreeTerm> c) { return {Kind::join, 0, std::move(c)}; }
    static FreeTerm meet_of(std::vector<FreeTerm> c) { return {Kind::meet, 0, std::move(c)}; }

    bool operator==(const FreeTerm& o) const;
    bool operator!=(const FreeTerm& o) const { return !(*this == o); }
};

/// Total order used for sorting children: depth, then kind, then children lexicographically.
bool term_less(const FreeTerm& a, const FreeTerm& b);
std::size_t term_depth(const FreeTerm& t);

/// Parses `+` (join), `*` (meet, binds tighter) and parentheses over x0..x{n-1}; for n = 3 the
/// names x, y, z are accepted too. Throws MalformedTerm.
FreeTerm parse_term(const std::string& text, std::size_t n);
/// Inverse of parse_term; uses x, y, z when n = 3.
std::string to_string(const FreeTerm& t, std::size_t n);

/// Checks generator indices and arities. Throws MalformedTerm.
void validate_term(const FreeTerm& t, std::size_t n);

/// s ≤ t in the free lattice (Whitman's procedure, memoised per call).
bool whitman_leq(const FreeTerm& s, const FreeTerm& t);
inline bool whitman_equiv(const FreeTerm& s, const FreeTerm& t) { return whitman_leq(s, t) && whitman_leq(t, s); }

/// Flattened, sorted, redundancy-free form; equal terms have equal canonical forms.
FreeTerm canonical_term(const FreeTerm& t, std::size_t n);

struct FreeFragment {
    std::size_t n = 0;
    std::size_t depth = 0;
    /// Canonical terms sorted by term_less.
    std::vector<FreeTerm> terms;
    FinitePoset order;
    /// Whether every binary join and meet of fragment terms is again in the fragment.
    bool closed = false;
};

/// Canonical terms built from generators with at most `depth` layers of (multi-ary) joins and meets.
FreeFragment free_lattice_fragment(std::size_t n, std::size_t depth, const Limits& lim = {});

/// Value of t in L under x_i ↦ assignment[i].
Id evaluate_term(const FreeTerm& t, const FiniteLattice& l, const std::vector<Id>& assignment);

/// A join of pure tensors a⊗t with a in a finite lattice A and t a term of F(n).
struct SymbolicTensor {
    std::vector<std::pair<Id, FreeTerm>> caps;
};

std::string to_string(const SymbolicTensor& s, const FiniteLattice& a, std::size_t n);

/// α = (a⊗x)∨(b⊗y)∨(c⊗z) and β = a⊗(x∨y∨z) in M₃⊗F(3). No claim is made about α∧β.
std::pair<SymbolicTensor, SymbolicTensor> m3_f3_objects(const FiniteLattice& m3);

/// Image of a symbolic element in A⊗L after substituting generators by elements of L.
BiIdeal evaluate_symbolic(const SymbolicTensor& s, const PairGrid& g, const std::vector<Id>& assignment);

}  // namespace latkit
