#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latkit/order.hpp"
#include "latkit/tensor.hpp"

namespace latkit {

/// A partition of 0..n-1 in canonical form: block ids are numbered by least member.
class Congruence {
  public:
    Congruence() = default;
    /// Accepts any block labelling and canonicalises it.
    explicit Congruence(const std::vector<Id>& block_of);
    static Congruence from_blocks(std::size_t n, const std::vector<std::vector<Id>>& blocks);
    static Congruence identity(std::size_t n);  // ω
    static Congruence full(std::size_t n);      // ι

    std::size_t size() const { return block_of_.size(); }
    std::size_t num_blocks() const { return num_blocks_; }
    Id block(Id x) const { return block_of_[x]; }
    const std::vector<Id>& block_of() const { return block_of_; }
    bool same(Id x, Id y) const { return block_of_[x] == block_of_[y]; }
    std::vector<std::vector<Id>> blocks() const;

    bool is_identity() const { return num_blocks_ == size(); }
    bool is_full() const { return num_blocks_ <= 1; }
    /// Refinement order: *this ⊆ other as relations.
    bool refines(const Congruence& other) const;

    bool operator==(const Congruence& o) const { return block_of_ == o.block_of_; }
    bool operator<(const Congruence& o) const { return block_of_ < o.block_of_; }

    /// Compact label such as "0,1|2|3".
    std::string label() const;

  private:
    std::vector<Id> block_of_;
    std::size_t num_blocks_ = 0;
};

struct CongruenceHash {
    std::size_t operator()(const Congruence& c) const;
};

Congruence join(const Congruence& x, const Congruence& y);
Congruence meet(const Congruence& x, const Congruence& y);

/// Least congruence of L containing every pair in `pairs`.
Congruence congruence_generated(const FiniteLattice& l, const std::vector<std::pair<Id, Id>>& pairs);
/// Least congruence containing the partition `seed`.
Congruence congruence_generated(const FiniteLattice& l, const Congruence& seed);
/// Θ(a, b)
Congruence principal_congruence(const FiniteLattice& l, Id a, Id b);

/// Exhaustive compatibility check.
bool is_congruence(const FiniteLattice& l, const Congruence& c);

struct ConLattice {
    /// Congruences ordered by refinement; index 0 is ω and the last one is ι.
    std::vector<Congruence> congruences;
    FiniteLattice lattice;
    bool simple = false;
    /// Indices of the join-irreducible congruences.
    std::vector<Id> join_irreducibles;

    std::optional<Id> find(const Congruence& c) const;
};

/// Con L, enumerated by closing the congruences Θ(j_*, j) under joins.
/// Results are memoised in a synchronised cache keyed by the order of L.
ConLattice con_lattice(const FiniteLattice& l, const Limits& lim = {});

/// The distinct congruences Θ(j_*, j), j ∈ J(L): exactly the join-irreducibles of Con L.
std::vector<Congruence> join_irreducible_congruences(const FiniteLattice& l);

enum class BoxKind { box, odot };

/// H ≡ K (α□β) iff every pair of H is (α×β)-related to a pair of K and symmetrically.
/// `sets` are the elements of a lattice of subsets of A×B, indexed like `grid`.
Congruence box_relation(const PairGrid& grid, const std::vector<Bits>& sets, const Congruence& alpha,
                        const Congruence& beta);

/// α□β or α⊙β = (α□ω_B) ∧ (ω_A□β) on A⊗B. Throws NotACongruence if the result is not one.
Congruence cong_box_tensor(const TensorProduct& t, const Congruence& alpha, const Congruence& beta,
                           BoxKind which);

/// Outcome of checking that a map defined on pairs of join-irreducible congruences extends to an
/// isomorphism Con A ⊗ Con B ≅ Con C.
struct GeneratorIsoReport {
    bool verdict = false;
    std::string failure;
    /// For each pair (index into ca.join_irreducibles, index into cb.join_irreducibles), the
    /// index of its image in `targets`.
    std::vector<std::vector<Id>> map;
    /// Join-irreducible congruences of C.
    std::vector<Congruence> targets;
};

/// Checks that (j, k) ↦ value(j, k) is a bijection from J(Con A) × J(Con B) (product order) onto
/// J(Con C) that preserves and reflects the order. Since Con A ⊗ Con B is distributive with
/// join-irreducibles exactly the pure tensors j⊗k, this is the isomorphism condition for the
/// join-extension. `value` receives congruence indices into ca/cb.
GeneratorIsoReport check_generator_iso(
    const FiniteLattice& c, const ConLattice& ca, const ConLattice& cb,
    const std::function<Congruence(Id, Id)>& value);

struct GlqOptions {
    Limits limits{400, 100000};
    /// Also build Con A ⊗ Con B with the tensor module when |Con A|·|Con B| is at most this.
    std::size_t full_route_max_pairs = 64;
    /// Alternative join decompositions sampled per element on the full route.
    std::size_t samples = 4;
    std::uint64_t seed = 1;
};

struct GlqReport {
    bool verdict = false;
    std::string failure;
    std::size_t tensor_size = 0;
    std::size_t con_a = 0, con_b = 0;
    std::size_t ji_targets = 0;
    bool full_route = false;
    GeneratorIsoReport generators;
};

/// Verifies Con A ⊗ Con B ≅ Con(A ⊗ B) via α⊗β ↦ α⊙β.
GlqReport glq_isomorphism_check(const FiniteLattice& a, const FiniteLattice& b,
                                const GlqOptions& opt = {});

struct SubTensorVerdict {
    bool verdict = false;
    /// 1: some mixed tensor missing; 2: not closed under intersection; 3: not a lattice.
    int failed_axiom = 0;
    std::string detail;
    std::vector<bool> capped;
    bool all_capped = false;
};

/// Checks the sub-tensor-product axioms for a family of bi-ideals of A⊗B.
SubTensorVerdict is_sub_tensor_product(const TensorProduct& t, const std::vector<Bits>& family);

struct PermutabilityVerdict {
    bool permutable = false;
    std::optional<std::pair<Congruence, Congruence>> witness;
};

/// α∘β = β∘α for all congruences.
PermutabilityVerdict permutable(const FiniteLattice& l, const Limits& lim = {});

struct CongPreservingVerdict {
    bool verdict = false;
    std::string detail;
};

/// Whether restriction Con K -> Con L along the embedding e is a bijection.
/// Throws NotAnEmbedding unless e is an injective lattice homomorphism.
CongPreservingVerdict cong_preserving_check(const FiniteLattice& l, const FiniteLattice& k,
                                            const std::vector<Id>& e, const Limits& lim = {});

/// Throws NotAnEmbedding with a reason if e is not an injective {∨,∧}-homomorphism.
void validate_embedding(const FiniteLattice& l, const FiniteLattice& k, const std::vector<Id>& e);

}  // namespace latkit
