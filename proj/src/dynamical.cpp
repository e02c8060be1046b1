#include "leff/dynamical.hpp"

#include <algorithm>
#include <set>

namespace leff {

TimedDescription TimedDescription::make(std::vector<std::string> ground,
                                        std::vector<std::vector<TimedRule>> rules) {
  if (ground.size() > static_cast<std::size_t>(kMaxPowersetWidth))
    throw validation_error("GroundSetTooLarge",
                           "timed description ground set exceeds the bit-mask cap");
  if (rules.size() != ground.size())
    throw validation_error("ShapeMismatch", "rule table does not cover the node set");
  const Mask full = static_cast<Mask>((1u << ground.size()) - 1);
  int d_max = 0;
  for (auto& per_node : rules) {
    for (const TimedRule& r : per_node) {
      if (r.set & ~full)
        throw validation_error("SchemaError", "rule subset leaves the ground set");
      if (r.delay < 0)
        throw validation_error("SchemaError", "rule delays must be ≥ 0");
      d_max = std::max(d_max, r.delay);
    }
    std::sort(per_node.begin(), per_node.end(), [](const TimedRule& a, const TimedRule& b) {
      return std::tie(a.set, a.delay) < std::tie(b.set, b.delay);
    });
    per_node.erase(std::unique(per_node.begin(), per_node.end()), per_node.end());
  }
  TimedDescription td{std::move(ground), std::move(rules), d_max};
  return td;
}

bool Trajectory::time_monotone() const {
  for (std::size_t m = 0; m + 1 < states.size(); ++m)
    if (states[m] & ~states[m + 1]) return false;
  return true;
}

Trajectory all_empty_trajectory(int horizon) {
  return Trajectory{std::vector<Mask>(static_cast<std::size_t>(horizon) + 1, 0)};
}

Trajectory constant_trajectory(Mask value, int horizon) {
  return Trajectory{std::vector<Mask>(static_cast<std::size_t>(horizon) + 1, value)};
}

TimedSystem::TimedSystem(TimedDescription td, int horizon)
    : td_(std::move(td)), horizon_(horizon) {
  if (horizon_ < 0)
    throw validation_error("SchemaError", "horizon must be ≥ 0");
}

Trajectory TimedSystem::apply(const Trajectory& x) const {
  if (x.horizon() != horizon_)
    throw validation_error("ShapeMismatch", "trajectory horizon does not match the system");
  Trajectory y = x;
  // Time monotonicity is part of the trajectory lattice; re-establish it for
  // raw inputs before closing under the rules.
  for (int m = 1; m <= horizon_; ++m) y.states[m] |= y.states[m - 1];
  for (bool grew = true; grew;) {
    grew = false;
    for (int m = 0; m <= horizon_; ++m) {
      for (int i = 0; i < td_.width(); ++i) {
        if (y.states[m] >> i & 1u) continue;
        for (const TimedRule& r : td_.rules[i]) {
          // fires from any earlier frame whose target lands at or before m
          bool fires = false;
          for (int src = 0; src <= m && !fires; ++src)
            if (src + r.delay <= m && (r.set & ~y.states[src]) == 0) fires = true;
          if (fires) {
            for (int t = m; t <= horizon_; ++t) y.states[t] |= Mask{1} << i;
            grew = true;
            break;
          }
        }
      }
    }
  }
  return y;
}

Trajectory TimedSystem::eval() const {
  Trajectory out = apply(all_empty_trajectory(horizon_));
  // Stabilized iff the last frame is closed under the delay-stripped rules;
  // otherwise some activation was pushed past the horizon.
  const Mask last = out.states.back();
  for (int i = 0; i < td_.width(); ++i) {
    if (last >> i & 1u) continue;
    for (const TimedRule& r : td_.rules[i])
      if ((r.set & ~last) == 0)
        throw validation_error("HorizonTooShort",
                               "evaluation has not stabilized by the horizon " +
                                   std::to_string(horizon_) + "; need ≥ " +
                                   std::to_string(td_.stabilization_horizon()));
  }
  return out;
}

Mask colim(const Trajectory& t) {
  Mask out = 0;
  for (Mask m : t.states) out |= m;
  return out;
}

Description strip_delays(const TimedDescription& td) {
  std::vector<std::vector<Mask>> rules(td.rules.size());
  for (std::size_t i = 0; i < td.rules.size(); ++i)
    for (const TimedRule& r : td.rules[i]) rules[i].push_back(r.set);
  return Description::make(td.ground, std::move(rules));
}

ClosureOperator agg(const TimedDescription& td) {
  auto carrier = std::make_shared<FinitePoset>(FinitePoset::powerset(td.ground));
  const int horizon = td.stabilization_horizon();
  const TimedSystem system(td, horizon);
  std::vector<int> table(carrier->size());
  for (int a = 0; a < carrier->size(); ++a)
    table[a] = static_cast<int>(
        colim(system.apply(constant_trajectory(static_cast<Mask>(a), horizon))));
  return ClosureOperator::validate(std::move(carrier), std::move(table));
}

CommuteReport commuting_square_check(const TimedDescription& td) {
  const TimedSystem system(td, td.stabilization_horizon());
  const Mask lhs = colim(system.eval());
  const Mask rhs = phenome_of(strip_delays(td));
  return CommuteReport{lhs == rhs, lhs, rhs};
}

TrajectoryLattice trajectory_lattice(const std::vector<std::string>& ground, int horizon) {
  auto chain = std::make_shared<FinitePoset>(FinitePoset::chain(horizon + 1));
  auto configs = std::make_shared<FinitePoset>(FinitePoset::powerset(ground));
  MapSpace space = map_space(chain, configs);
  std::vector<Trajectory> elements;
  elements.reserve(space.functions.size());
  for (const auto& f : space.functions) {
    Trajectory t;
    t.states.reserve(f.size());
    for (int v : f) t.states.push_back(static_cast<Mask>(v));
    elements.push_back(std::move(t));
  }
  return TrajectoryLattice{FinitePoset::require(std::move(space.space)),
                           std::move(elements)};
}

int TrajectoryLattice::index_of(const Trajectory& t) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == t) return static_cast<int>(i);
  return -1;
}

Veil project_at(const TrajectoryLattice& lattice,
                const std::vector<std::string>& ground, int i) {
  if (lattice.elements.empty() || i < 0 || i > lattice.elements.front().horizon())
    throw validation_error("SchemaError", "projection index outside the time chain");
  auto domain = std::make_shared<FinitePoset>(lattice.poset);
  auto codomain = std::make_shared<FinitePoset>(FinitePoset::powerset(ground));
  std::vector<int> table(lattice.elements.size());
  for (std::size_t e = 0; e < lattice.elements.size(); ++e)
    table[e] = static_cast<int>(lattice.elements[e].states[i]);
  Veil v = Veil::validate(MonotoneMap::validate(domain, codomain, std::move(table)));

  // Adjoint shape: bottom strictly before time i, the phenome from i onward.
  const int horizon = lattice.elements.front().horizon();
  for (int p = 0; p < codomain->size(); ++p) {
    Trajectory expected;
    expected.states.assign(static_cast<std::size_t>(horizon) + 1, 0);
    for (int m = i; m <= horizon; ++m) expected.states[m] = static_cast<Mask>(p);
    LEFF_INTERNAL_CHECK(lattice.elements[v.left_adjoint(p)] == expected,
                        "projection adjoint must hold the phenome from time i onward");
  }
  return v;
}

std::vector<Behavior> filtration(const std::vector<int>& universe_sizes,
                                 const Behavior& behavior) {
  if (universe_sizes.empty() || universe_sizes.size() > 4)
    throw validation_error("SchemaError", "filtration supports 1 to 4 coordinates");
  long total = 1;
  for (int s : universe_sizes) {
    if (s <= 0) throw validation_error("SchemaError", "universe components must be non-empty");
    total *= s;
    if (total > 1 << 16)
      throw validation_error("SpaceTooLarge", "product universum exceeds the enumeration cap");
  }
  for (int idx : behavior)
    if (idx < 0 || idx >= total)
      throw validation_error("SchemaError", "behavior tuple outside the universum");

  const int n = static_cast<int>(universe_sizes.size());
  // Flat index decomposition: coordinate i of idx, row-major.
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * universe_sizes[i + 1];
  auto coord = [&](int idx, int i) { return idx / stride[i] % universe_sizes[i]; };

  std::vector<Behavior> out;
  for (int i = 0; i < n; ++i) {
    std::set<int> projected;
    for (int idx : behavior) projected.insert(coord(idx, i));
    Behavior fi;
    for (int idx = 0; idx < total; ++idx)
      if (projected.count(coord(idx, i))) fi.push_back(idx);
    out.push_back(std::move(fi));
  }
  return out;
}

}  // namespace leff
