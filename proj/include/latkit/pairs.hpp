#pragma once

#include <utility>
#include <vector>

#include "latkit/order.hpp"

namespace latkit {

/// Subsets of A×B as bitsets; pair ⟨x,y⟩ lives at bit x*|B| + y.
class PairGrid {
  public:
    PairGrid(FiniteLattice a, FiniteLattice b);

    const FiniteLattice& a() const { return a_; }
    const FiniteLattice& b() const { return b_; }
    std::size_t size() const { return a_.size() * b_.size(); }

    std::size_t index(Id x, Id y) const { return x * b_.size() + y; }
    Id first(std::size_t i) const { return static_cast<Id>(i / b_.size()); }
    Id second(std::size_t i) const { return static_cast<Id>(i % b_.size()); }

    Bits empty() const { return Bits(size()); }
    Bits full() const { return ~Bits(size()); }
    /// ↓x × ↓y
    const Bits& down_box(Id x, Id y) const { return down_[index(x, y)]; }
    /// ↑x × ↑y
    const Bits& up_box(Id x, Id y) const { return up_[index(x, y)]; }

    /// (A×{0}) ∪ ({0}×B)
    const Bits& bottom() const { return bottom_; }

    /// Down-closure under the componentwise order.
    Bits down_closure(const Bits& s) const;
    /// Pairs of s that have no strictly larger pair in s.
    std::vector<std::pair<Id, Id>> maximal_pairs(const Bits& s) const;
    std::vector<std::pair<Id, Id>> pairs(const Bits& s) const;
    Bits from_pairs(const std::vector<std::pair<Id, Id>>& ps) const;

    /// Image of s under ⟨x,y⟩ ↦ ⟨y,x⟩, indexed in the grid (B, A).
    Bits swapped(const Bits& s) const;

  private:
    FiniteLattice a_;
    FiniteLattice b_;
    std::vector<Bits> down_;
    std::vector<Bits> up_;
    Bits bottom_;
};

}  // namespace latkit
