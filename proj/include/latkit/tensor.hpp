#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latkit/order.hpp"
#include "latkit/pairs.hpp"

namespace latkit {

/// A bi-ideal of A×B: hereditary, contains ⊥_{A,B}, closed under lateral joins.
struct BiIdeal {
    Bits members;
    bool operator==(const BiIdeal& o) const { return members == o.members; }
};

/// ⊥_{A,B} = (A×{0}) ∪ ({0}×B)
BiIdeal bottom_tensor(const PairGrid& g);
/// a⊗b = ⊥ ∪ ↓⟨a,b⟩
BiIdeal pure_tensor(const PairGrid& g, Id a, Id b);
/// (a0⊗b0) ∪ (a1⊗b1) for a0 ≤ a1, b0 ≥ b1. Throws MixedPreconditionViolated.
BiIdeal mixed_tensor(const PairGrid& g, Id a0, Id b0, Id a1, Id b1);

/// Least bi-ideal containing `seed`.
BiIdeal bi_ideal_closure(const PairGrid& g, const Bits& seed);

/// Literal check of the three bi-ideal conditions.
bool is_bi_ideal(const PairGrid& g, const Bits& s);

/// Maximal pairs of I. Their pure tensors cover I exactly.
std::vector<std::pair<Id, Id>> caps(const PairGrid& g, const BiIdeal& i);

/// Human-readable cap list, e.g. "<a,1>+<b,x>", boundary caps omitted; "0" for ⊥.
std::string cap_label(const PairGrid& g, const BiIdeal& i);

/// A⊗B for finite lattices: every bi-ideal, ordered by inclusion.
class TensorProduct {
  public:
    TensorProduct(PairGrid grid, std::vector<Bits> elements);

    const PairGrid& grid() const { return grid_; }
    const FiniteLattice& lattice() const { return lattice_; }
    const std::vector<Bits>& elements() const { return elements_; }
    const Bits& element(Id i) const { return elements_[i]; }
    std::size_t size() const { return elements_.size(); }
    std::optional<Id> find(const Bits& s) const;
    /// Id of the bi-ideal a⊗b.
    Id pure(Id a, Id b) const;

  private:
    PairGrid grid_;
    std::vector<Bits> elements_;
    std::unordered_map<Bits, Id, BitsHash> index_;
    FiniteLattice lattice_;
};

/// Enumerates A⊗B by closing the pure tensors under joins. The guard is on |A|·|B| (default 20).
TensorProduct tensor_product(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim = {});

/// Element of Hom(⟨A⁻;∨⟩, ⟨Id B;∩⟩). value[x] = b means φ(x) = ↓b; value[0_A] is unused.
struct TensorHom {
    std::vector<Id> value;
};

struct HomTensorResult {
    std::vector<TensorHom> homs;
    /// Homomorphisms ordered componentwise.
    FiniteLattice lattice;
    /// ε(φ) as an element id of tensor_product(A, B), per hom.
    std::vector<Id> epsilon;
    bool iso_check = false;
    std::string failure;
};

/// Enumerates A ⊗→ B via restrictions to J(A), discards inconsistent extensions and checks that
/// ε(φ) = {⟨x,y⟩ : y ∈ φ(x)} ∪ ⊥ is an order isomorphism onto the bi-ideal lattice.
HomTensorResult hom_tensor(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim = {});

}  // namespace latkit
