#pragma once

#include <string>
#include <vector>

#include "leff/contagion.hpp"
#include "leff/galois.hpp"
#include "leff/order.hpp"

namespace leff {

// A rule (S, d): once S is fully active at time m, node i activates at m+d.
struct TimedRule {
  Mask set = 0;
  int delay = 0;
  friend bool operator==(const TimedRule&, const TimedRule&) = default;
};

struct TimedDescription {
  std::vector<std::string> ground;
  std::vector<std::vector<TimedRule>> rules;
  int d_max = 0;

  static TimedDescription make(std::vector<std::string> ground,
                               std::vector<std::vector<TimedRule>> rules);
  int width() const { return static_cast<int>(ground.size()); }
  Mask full_mask() const { return static_cast<Mask>((1u << ground.size()) - 1); }
  // |Σ|·(d_max+1): at most |Σ| strict growth events, each within d_max+1
  // steps.
  int stabilization_horizon() const { return width() * (d_max + 1); }
  friend bool operator==(const TimedDescription&, const TimedDescription&) = default;
};

// Frames X_0 ⊆ X_1 ⊆ ... ⊆ X_T over the finite time chain {0..T}.
struct Trajectory {
  std::vector<Mask> states;
  int horizon() const { return static_cast<int>(states.size()) - 1; }
  bool time_monotone() const;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

Trajectory all_empty_trajectory(int horizon);
Trajectory constant_trajectory(Mask value, int horizon);

// The interpretation of a timed description at a fixed horizon: an
// inflationary, monotone, idempotent self-map on the trajectory lattice.
class TimedSystem {
 public:
  TimedSystem(TimedDescription td, int horizon);

  const TimedDescription& description() const { return td_; }
  int horizon() const { return horizon_; }

  // Least trajectory above the input closed under every rule; rules whose
  // target time passes the horizon are dropped by the truncation.
  Trajectory apply(const Trajectory& x) const;

  // apply(⊥). Throws HorizonTooShort when the final frame is not yet closed
  // under the delay-stripped rules, i.e. when truncation loses activations.
  Trajectory eval() const;

 private:
  TimedDescription td_;
  int horizon_;
};

// Union over all frames; preserves joins.
Mask colim(const Trajectory& t);

// Every pair (S, d) replaced by (S, 0).
Description strip_delays(const TimedDescription& td);

// Time collapse agg f : a ↦ colim f(a^I), tabulated over the powerset
// carrier and validated against the closure axioms.
ClosureOperator agg(const TimedDescription& td);

// colim ∘ eval versus eval ∘ agg, the latter through the syntactic
// delay-stripping route so the two sides are independent computations.
struct CommuteReport {
  bool pass = false;
  Mask lhs = 0;
  Mask rhs = 0;
};
CommuteReport commuting_square_check(const TimedDescription& td);

// The lattice of all trajectories over {0..T}; elements carry their frames.
struct TrajectoryLattice {
  FinitePoset poset;
  std::vector<Trajectory> elements;
  int index_of(const Trajectory& t) const;
};
TrajectoryLattice trajectory_lattice(const std::vector<std::string>& ground, int horizon);

// π_i : P^I → P, a veil whose left adjoint is bottom before time i and the
// phenome from i onward.
Veil project_at(const TrajectoryLattice& lattice,
                const std::vector<std::string>& ground, int i);

// Behaviors over a product universum U_1 × ... × U_n, as sorted flat indices.
using Behavior = std::vector<int>;

// F_i B = p_i^{-1}(p_i B) for each coordinate i; the per-variable filtration
// of a behavior. Each F_i B contains B; the formula is applied literally and
// which aggregation of the family recovers B (intersection, under the
// reverse-inclusion reading) is left to the caller; the indexing convention
// is not fixed here.
std::vector<Behavior> filtration(const std::vector<int>& universe_sizes,
                                 const Behavior& behavior);

}  // namespace leff
