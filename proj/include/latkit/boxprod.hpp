#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latkit/congruence.hpp"
#include "latkit/order.hpp"
#include "latkit/pairs.hpp"

namespace latkit {

/// a□b = {⟨x,y⟩ : x ≤ a or y ≤ b}
Bits box_set(const PairGrid& g, Id a, Id b);
/// c∘d = {⟨x,y⟩ : x ≤ c and y ≤ d}
Bits circ_set(const PairGrid& g, Id c, Id d);

/// Which bounds of a factor are visible to ⊥ and to confinement. A finite lattice always has
/// both; hiding one simulates a lattice without it.
struct BoundFlags {
    bool zero = true;
    bool unit = true;
};

/// ⊥_{A,B} = (A×⊥_B) ∪ (⊥_A×B) with ⊥_L = {0_L} when the zero is visible, ∅ otherwise.
Bits bottom_set(const PairGrid& g, BoundFlags fa = {}, BoundFlags fb = {});
/// a⊠b = (a∘b) ∪ ⊥_{A,B}
Bits boxtimes_set(const PairGrid& g, Id a, Id b, BoundFlags fa = {}, BoundFlags fb = {});

/// Element of A□B in both intensional and extensional form.
struct BoxElement {
    /// Irredundant list of pairs ⟨aᵢ,bᵢ⟩ with extent = ⋂ aᵢ□bᵢ.
    std::vector<std::pair<Id, Id>> witness;
    Bits extent;
};

/// Canonical witness for an extent that is a finite intersection of box sets: all ⟨a,b⟩ with
/// extent ⊆ a□b in index order, then greedy removal lowest index first. Throws FormatError if the
/// extent is not such an intersection.
BoxElement box_element(const PairGrid& g, const Bits& extent);

/// ⋃ aᵢ□bᵢ ∪ ⋃ cⱼ∘dⱼ with at least one box term.
struct BoxdotElement {
    std::vector<std::pair<Id, Id>> box_terms;
    std::vector<std::pair<Id, Id>> circ_terms;
    Bits extent;
};

BoxdotElement boxdot_element(const PairGrid& g, std::vector<std::pair<Id, Id>> box_terms,
                             std::vector<std::pair<Id, Id>> circ_terms);

/// H̄ = ⋂ { a^(X) □ b^(n−X) : X ⊆ n }, X ranging over subsets of the circ-term indices.
BoxElement box_closure(const PairGrid& g, const BoxdotElement& h);

/// A lattice of subsets of A×B ordered by inclusion, with the extents kept for lookups.
class SetLattice {
  public:
    SetLattice(PairGrid grid, std::vector<Bits> elements, std::vector<std::string> labels, std::string name);

    const PairGrid& grid() const { return grid_; }
    const FiniteLattice& lattice() const { return lattice_; }
    const std::vector<Bits>& elements() const { return elements_; }
    const Bits& element(Id i) const { return elements_[i]; }
    std::size_t size() const { return elements_.size(); }
    std::optional<Id> find(const Bits& s) const;

  private:
    PairGrid grid_;
    std::vector<Bits> elements_;
    std::unordered_map<Bits, Id, BitsHash> index_;
    FiniteLattice lattice_;
};

/// Label of a box element such as "a[]u & b[]v".
std::string box_label(const PairGrid& g, const BoxElement& e);

/// A□B, enumerated by closing the sets a□b under intersection. Guard on |A|·|B|.
SetLattice box_product(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim = {});

/// Least element of `box` containing s, found by scanning. nullopt if none.
std::optional<Id> least_containing(const SetLattice& box, const Bits& s);

/// H ∨ K in A□B: H ∪ K rewritten as an A⊡B element and closed with the formula.
BoxElement box_join_by_formula(const PairGrid& g, const BoxElement& h, const BoxElement& k);

struct LatticeTensor {
    SetLattice set;
    /// Which hypotheses of the nonemptiness criterion the flagged inputs satisfy:
    /// (i) both zeros, (ii) one factor bounded, (iii) both units.
    std::array<bool, 3> cases{};
};

/// A⊠B: the confined elements of A□B, i.e. those inside some a⊠b. Asserts the ideal property and
/// A⊠B = A□B when both units are visible. Throws EmptyResult when no element is confined, and
/// FormatError when a hidden unit (zero) is join- (meet-) reducible.
LatticeTensor lattice_tensor_product(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim = {},
                                     BoundFlags fa = {}, BoundFlags fb = {});

struct LtpReport {
    bool dual_iso = false;
    /// H ↦ ⋂{a□b : ⟨a,b⟩ ∈ H} is an order anti-isomorphism from A⊠B onto A^d□B^d.
    bool dual_map = false;
    bool capped_subtensor = false;
    /// Only meaningful when A or B is distributive.
    std::optional<bool> distributive_equality;
    std::string detail;
};

/// The three structural facts about A⊠B for A, B with zero. Runs the checks concurrently.
LtpReport ltp_theorems(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim = {});

struct MuReport {
    bool verdict = false;
    std::string failure;
    std::size_t ltp_size = 0;
    GeneratorIsoReport generators;
    /// Principal pairs (a0 ≤ a1, b0 ≤ b1) at which formula (i) was compared with the join extension.
    std::size_t formula_checks = 0;
    /// Formula (ii) also defines an isomorphism on generators.
    bool formula_ii_iso = false;
    /// Informational: (ii) and (i) agree on every generator pair.
    bool formula_ii_agrees = false;
    /// Formula (iii) equals formula (i) for the duals transported along the dual anti-isomorphism.
    bool formula_iii_consistent = false;
};

struct MuOptions {
    Limits limits{400, 100000};
    /// Compare all principal pairs when there are at most this many, otherwise sample.
    std::size_t exhaustive_pairs = 400;
    std::size_t samples = 64;
    std::uint64_t seed = 1;
};

/// Verifies Con A ⊗ Con B ≅ Con(A⊠B) through μ(α⊗β) = Θ((a0⊠b1)∨(a1⊠b0), a1⊠b1).
MuReport mu_iso(const FiniteLattice& a, const FiniteLattice& b, const MuOptions& opt = {});

enum class TripleKind { ml, m3bracket, n5bracket, nl };

TripleKind parse_triple_kind(const std::string& s);
std::string to_string(TripleKind k);

struct TripleLattice {
    TripleKind kind;
    std::vector<std::array<Id, 3>> triples;
    /// Componentwise order; labels "x,y,z".
    FinitePoset order;
    /// Present when the order is a lattice.
    std::optional<FiniteLattice> lattice;

    std::optional<Id> find(const std::array<Id, 3>& t) const;
};

/// M₃⟨L⟩, M₃[L], N₅[L] or N₅⟨L⟩ ordered componentwise.
TripleLattice triples(const FiniteLattice& l, TripleKind kind);

struct TripleIsoReport {
    bool verdict = false;
    std::string failure;
};

/// Checks that ⟨v∧w,u∧w,u∧v⟩ ↦ (p□u)∩(q□v)∩(r□w) is an isomorphism M₃⟨L⟩ → M₃⊠L (which = m3), or
/// ⟨v∧w,u∧w,v⟩ ↦ (a□u)∩(b□v)∩(c□w) is one N₅⟨L⟩ → N₅⊠L (which = n5).
TripleIsoReport triple_iso_check(const FiniteLattice& l, const std::string& which, const Limits& lim = {});

enum class EmbeddingKind { diagonal, j, j_s };

EmbeddingKind parse_embedding_kind(const std::string& s);

struct EmbeddingReport {
    FiniteLattice target;
    std::vector<Id> map;
    CongPreservingVerdict verdict;
};

/// diagonal: L → M₃⟨L⟩, x ↦ ⟨x,x,x⟩ (S unused). j: L → S⊠L, x ↦ 0_S□x. j_s: x ↦ s⊠x.
/// Throws NotSimple for j and j_s when S is not simple.
EmbeddingReport embedding_check(const FiniteLattice& s, const FiniteLattice& l, EmbeddingKind which,
                                std::optional<Id> s_elem = std::nullopt, const Limits& lim = {});

}  // namespace latkit
