#pragma once

#include <vector>

#include "leff/order.hpp"

namespace leff {

// Inflationary, monotone, idempotent self-map on a poset. The carrier is
// shared and immutable; equality of operators is extensional.
class ClosureOperator {
 public:
  // Validates C.1 (inflationary), C.2 (monotone), C.3 (idempotent); throws
  // AxiomViolation listing every failed axiom with witnesses.
  static ClosureOperator validate(PosetPtr carrier, std::vector<int> table);

  const FinitePoset& carrier() const { return *carrier_; }
  const PosetPtr& carrier_ptr() const { return carrier_; }
  int operator()(int x) const { return table_[x]; }
  const std::vector<int>& table() const { return table_; }

  // Pointwise operator order: f ≤ g iff f(x) ≤ g(x) for all x.
  bool leq(const ClosureOperator& g) const;
  friend bool operator==(const ClosureOperator& f, const ClosureOperator& g) {
    return same_carrier(f.carrier(), g.carrier()) && f.table_ == g.table_;
  }

 private:
  ClosureOperator(PosetPtr carrier, std::vector<int> table)
      : carrier_(std::move(carrier)), table_(std::move(table)) {}

  PosetPtr carrier_;
  std::vector<int> table_;
};

// Deflationary, monotone, idempotent self-map (K.1–K.3).
class KernelOperator {
 public:
  static KernelOperator validate(PosetPtr carrier, std::vector<int> table);

  const FinitePoset& carrier() const { return *carrier_; }
  const PosetPtr& carrier_ptr() const { return carrier_; }
  int operator()(int x) const { return table_[x]; }
  const std::vector<int>& table() const { return table_; }

  bool leq(const KernelOperator& g) const;
  friend bool operator==(const KernelOperator& f, const KernelOperator& g) {
    return same_carrier(f.carrier(), g.carrier()) && f.table_ == g.table_;
  }

 private:
  KernelOperator(PosetPtr carrier, std::vector<int> table)
      : carrier_(std::move(carrier)), table_(std::move(table)) {}

  PosetPtr carrier_;
  std::vector<int> table_;
};

// An intersection-closed subset family containing the full set: exactly the
// fixed-point families of closure operators on a powerset carrier.
class MooreFamily {
 public:
  // Throws NotMooreFamily when Σ is missing or some pairwise intersection is.
  static MooreFamily validate(std::vector<std::string> ground, std::vector<Mask> family);

  const std::vector<std::string>& ground() const { return ground_; }
  // Sorted ascending by mask value; canonical form.
  const std::vector<Mask>& members() const { return members_; }
  Mask full_mask() const { return static_cast<Mask>((1u << ground_.size()) - 1); }

  friend bool operator==(const MooreFamily& a, const MooreFamily& b) {
    return a.ground_ == b.ground_ && a.members_ == b.members_;
  }

 private:
  MooreFamily(std::vector<std::string> ground, std::vector<Mask> members)
      : ground_(std::move(ground)), members_(std::move(members)) {}

  std::vector<std::string> ground_;
  std::vector<Mask> members_;
};

// Fixed points of a closure operator as a sub-poset, with the embedding into
// the carrier. On complete-lattice carriers this is asserted to be a complete
// lattice; on powerset carriers additionally closed under intersection.
struct FixedPoints {
  FinitePoset poset;
  std::vector<int> carrier_index;  // sub-element -> carrier element
};
FixedPoints fixed_points(const ClosureOperator& c);

// Least closure operator above both, computed by iterating the composite fg
// to idempotence. Stabilization within the carrier height is asserted.
ClosureOperator closure_join(const ClosureOperator& f, const ClosureOperator& g);

// Greatest closure operator below both; powerset carriers only. Realized by
// closing the union of the fixed-point families under intersection.
ClosureOperator closure_meet(const ClosureOperator& f, const ClosureOperator& g);

// The fixed-point side of the isomorphism ⟨System,≤,∨⟩ ≅ ⟨L,⊇,∩⟩;
// powerset carriers only.
MooreFamily to_moore_family(const ClosureOperator& c);
ClosureOperator from_moore_family(const MooreFamily& m);

// Independent route to the join: intersect fixed-point families and convert
// back. Kept separate from closure_join on purpose; the pair is a dual-route
// check of the isomorphism.
ClosureOperator join_via_moore_oracle(const ClosureOperator& f, const ClosureOperator& g);

// Every Moore family on the given ground set; the full System lattice.
// Feasible for |ground| ≤ 3.
std::vector<MooreFamily> all_moore_families(const std::vector<std::string>& ground);

}  // namespace leff
