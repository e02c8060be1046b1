#pragma once

#include <string>
#include <vector>

#include "leff/galois.hpp"
#include "leff/operators.hpp"
#include "leff/order.hpp"

namespace leff {

// A syntactic system description: per node, the collection of neighborhood
// sets whose full infection triggers the node. Rule sets are kept as bit
// masks over the ground set; canonical form is sorted and deduplicated per
// node (supersets are kept; see normalize).
struct Description {
  std::vector<std::string> ground;
  std::vector<std::vector<Mask>> rules;

  static Description make(std::vector<std::string> ground,
                          std::vector<std::vector<Mask>> rules);
  int width() const { return static_cast<int>(ground.size()); }
  Mask full_mask() const { return static_cast<Mask>((1u << ground.size()) - 1); }
  friend bool operator==(const Description&, const Description&) = default;
};

// Drops per-node rule sets that are supersets of another rule set of the same
// node; a superset rule can only fire when the subset rule already fired.
// Deliberately a separate pass so syntactic tests see raw descriptions.
Description normalize(const Description& d);

// Synchronous infection rounds from an initial set until stabilization.
// states runs A_0, A_1, ..., A_{converged_at+1} with the last two equal.
struct CascadeTrace {
  std::vector<Mask> states;
  int converged_at = 0;
  Mask final_state() const { return states.back(); }
};
CascadeTrace cascade_trace(const Description& d, Mask initial);

// Final infected set for an initial set, without materializing anything.
Mask cascade_fixpoint(const Description& d, Mask initial);

// The semantics f_N of a description, tabulated over the powerset carrier and
// validated against the closure axioms.
ClosureOperator interpret(const Description& d);

// Least fixed point from the empty start; agrees with interpret(d)(∅).
Mask phenome_of(const Description& d);

// Per-node union of the rule collections. Throws GroundMismatch.
Description merge(const Description& d1, const Description& d2);

// Threshold model on an undirected graph: node i is triggered by any
// k_i-element subset of its neighbors; threshold 0 self-activates, a
// threshold above the degree means the node is never neighbor-infected.
Description threshold_description(const std::vector<std::string>& nodes,
                                  const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& thresholds);

// The full System lattice over a ground set: one element per closure operator
// on the powerset, ordered pointwise. Enumeration is feasible for ≤ 3 nodes.
struct SystemLattice {
  FinitePoset poset;
  std::vector<ClosureOperator> systems;
  // Index of an operator in the lattice; -1 when the carrier does not match.
  int index_of(const ClosureOperator& f) const;
};
SystemLattice enumerate_systems(const std::vector<std::string>& ground);

// The least-fixed-point veil Φ : System → 2^Σ, Φ(f) = f(∅). Its left adjoint
// sends S to the system T ↦ T ∪ S.
Veil phenome_veil(const std::vector<std::string>& ground);
// The System-lattice carrier used by phenome_veil, for mapping descriptions
// to veil elements.
SystemLattice phenome_veil_systems(const std::vector<std::string>& ground);

// Zoom into one system: the inclusion of fix(f) into the full configuration
// space. The left adjoint is f itself.
Veil zoom_in_veil(const ClosureOperator& f);

}  // namespace leff
