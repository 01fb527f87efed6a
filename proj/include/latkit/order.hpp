#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/errors.hpp"

namespace latkit {

/// Caps for constructions whose output can grow exponentially in the input.
struct Limits {
    /// Largest admissible |A|*|B| for product-shaped constructions (tensor, box).
    std::size_t max_pairs = 20;
    /// Largest number of elements any enumerator may produce.
    std::size_t max_elements = 100000;
};

/// A finite partial order on the dense ids 0..n-1. Labels are metadata only.
class FinitePoset {
  public:
    FinitePoset() = default;

    /// Builds the order generated by `covers` (pairs i < j). Any acyclic relation is accepted;
    /// redundant pairs are dropped by the transitive reduction.
    static FinitePoset from_covers(std::vector<std::string> labels,
                                   const std::vector<std::pair<Id, Id>>& covers);

    /// `up[x]` holds every y with x <= y. Throws InvalidOrder if this is not a partial order.
    static FinitePoset from_up_sets(std::vector<std::string> labels, std::vector<Bits> up);

    template <typename Leq>
    static FinitePoset from_predicate(std::vector<std::string> labels, Leq&& leq) {
        const std::size_t n = labels.size();
        std::vector<Bits> up(n, Bits(n));
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                if (leq(static_cast<Id>(x), static_cast<Id>(y))) up[x].set(y);
            }
        }
        return from_up_sets(std::move(labels), std::move(up));
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(Id x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool leq(Id x, Id y) const { return up_[x].test(y); }
    bool lt(Id x, Id y) const { return x != y && up_[x].test(y); }
    bool comparable(Id x, Id y) const { return leq(x, y) || leq(y, x); }
    const Bits& up(Id x) const { return up_[x]; }
    const Bits& down(Id x) const { return down_[x]; }

    const std::vector<Id>& lower_covers(Id x) const { return lower_covers_[x]; }
    const std::vector<Id>& upper_covers(Id x) const { return upper_covers_[x]; }
    /// Covering pairs (lower, upper), sorted.
    std::vector<std::pair<Id, Id>> covers() const;

    std::vector<Id> minimal() const;
    std::vector<Id> maximal() const;

    /// Ids sorted by |down(x)| then id: a linear extension of the order.
    const std::vector<Id>& linear_extension() const { return topo_; }

    /// Length of the longest chain ending at x.
    std::size_t height(Id x) const { return height_[x]; }

    /// The induced order on `ids` (new id i stands for ids[i]).
    FinitePoset subposet(const std::vector<Id>& ids) const;

    FinitePoset dual() const;

    bool operator==(const FinitePoset& o) const { return up_ == o.up_; }

  private:
    void derive();

    std::vector<std::string> labels_;
    std::vector<Bits> up_;
    std::vector<Bits> down_;
    std::vector<std::vector<Id>> lower_covers_;
    std::vector<std::vector<Id>> upper_covers_;
    std::vector<Id> topo_;
    std::vector<std::size_t> height_;
};

struct LatticeVerdict {
    bool lattice = false;
    /// A pair without a least upper bound or greatest lower bound.
    std::optional<std::pair<Id, Id>> witness;
    std::string reason;
};

LatticeVerdict is_lattice(const FinitePoset& p);

/// A finite lattice with precomputed join and meet tables.
class FiniteLattice {
  public:
    FiniteLattice() = default;

    /// Throws NotALattice carrying the first offending pair.
    static FiniteLattice from_poset(FinitePoset p, std::string name = {});

    const FinitePoset& poset() const { return poset_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    std::size_t size() const { return poset_.size(); }
    const std::string& label(Id x) const { return poset_.label(x); }
    const std::vector<std::string>& labels() const { return poset_.labels(); }

    bool leq(Id x, Id y) const { return poset_.leq(x, y); }
    Id join(Id x, Id y) const { return join_[x * size() + y]; }
    Id meet(Id x, Id y) const { return meet_[x * size() + y]; }
    Id zero() const { return zero_; }
    Id one() const { return one_; }

    template <typename Range>
    Id join_all(const Range& r) const {
        Id acc = zero_;
        for (Id x : r) acc = join(acc, x);
        return acc;
    }
    template <typename Range>
    Id meet_all(const Range& r) const {
        Id acc = one_;
        for (Id x : r) acc = meet(acc, x);
        return acc;
    }

    /// Looks an element up by label; throws FormatError if absent.
    Id find_label(const std::string& label) const;

  private:
    FinitePoset poset_;
    std::string name_;
    std::vector<Id> join_;
    std::vector<Id> meet_;
    Id zero_ = 0;
    Id one_ = 0;
};

/// A finite join-semilattice. Every finite lattice is one; the zero is optional.
class JoinSemilattice {
  public:
    JoinSemilattice() = default;
    static JoinSemilattice from_lattice(const FiniteLattice& l);
    /// The meet-semilattice of `l` presented as the join-semilattice of its dual.
    static JoinSemilattice meet_view(const FiniteLattice& l);
    /// Throws NotALattice if some pair lacks a join.
    static JoinSemilattice from_poset(FinitePoset p);

    const FinitePoset& poset() const { return poset_; }
    std::size_t size() const { return poset_.size(); }
    bool leq(Id x, Id y) const { return poset_.leq(x, y); }
    Id join(Id x, Id y) const { return join_[x * size() + y]; }
    std::optional<Id> zero() const { return zero_; }

    /// Elements that are not the join of elements strictly below them (zero excluded).
    std::vector<Id> join_irreducibles() const;
    /// The elements other than zero (the A^- view).
    std::vector<Id> nonzero() const;

  private:
    FinitePoset poset_;
    std::vector<Id> join_;
    std::optional<Id> zero_;
};

struct Irreducible {
    Id element;
    /// The unique lower cover (for join-irreducibles) or upper cover (for meet-irreducibles).
    Id cover;
};

std::vector<Irreducible> join_irreducibles(const FiniteLattice& l);
std::vector<Irreducible> meet_irreducibles(const FiniteLattice& l);
std::vector<Id> join_irreducible_ids(const FiniteLattice& l);

struct DistributivityVerdict {
    bool distributive = false;
    /// (x, y, z) with x∧(y∨z) != (x∧y)∨(x∧z).
    std::optional<std::array<Id, 3>> witness;
};

DistributivityVerdict is_distributive(const FiniteLattice& l);

FiniteLattice build_lattice(std::vector<std::string> labels,
                            const std::vector<std::pair<Id, Id>>& covers, std::string name = {});

FiniteLattice dual(const FiniteLattice& l);
FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);
FiniteLattice power(const FiniteLattice& l, std::size_t exponent);

/// Ideals of ⟨S; ∨⟩ (non-empty down-sets closed under joins) ordered by inclusion.
FiniteLattice ideal_lattice(const JoinSemilattice& s);

/// Finite lattice built from a family of sets ordered by inclusion. The family must be a lattice
/// under inclusion (closure systems always are).
FiniteLattice lattice_of_sets(const std::vector<Bits>& sets, std::vector<std::string> labels,
                              std::string name = {});

}  // namespace latkit
