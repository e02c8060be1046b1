#include "leff/contagion.hpp"

#include <algorithm>

namespace leff {

Description Description::make(std::vector<std::string> ground,
                              std::vector<std::vector<Mask>> rules) {
  if (ground.size() > static_cast<std::size_t>(kMaxPowersetWidth))
    throw validation_error("GroundSetTooLarge",
                           "description ground set exceeds the bit-mask cap of " +
                               std::to_string(kMaxPowersetWidth));
  if (rules.size() != ground.size())
    throw validation_error("ShapeMismatch", "rule table does not cover the node set");
  const Mask full = static_cast<Mask>((1u << ground.size()) - 1);
  for (auto& per_node : rules) {
    for (Mask m : per_node)
      if (m & ~full)
        throw validation_error("SchemaError", "rule subset leaves the ground set");
    std::sort(per_node.begin(), per_node.end());
    per_node.erase(std::unique(per_node.begin(), per_node.end()), per_node.end());
  }
  return Description{std::move(ground), std::move(rules)};
}

Description normalize(const Description& d) {
  std::vector<std::vector<Mask>> rules(d.rules.size());
  for (std::size_t i = 0; i < d.rules.size(); ++i) {
    for (Mask m : d.rules[i]) {
      bool dominated = false;
      for (Mask other : d.rules[i])
        if (other != m && (other & ~m) == 0) {
          dominated = true;
          break;
        }
      if (!dominated) rules[i].push_back(m);
    }
  }
  return Description::make(d.ground, std::move(rules));
}

namespace {

Mask cascade_step(const Description& d, Mask state) {
  Mask next = state;
  for (int i = 0; i < d.width(); ++i) {
    if (next >> i & 1u) continue;
    for (Mask rule : d.rules[i])
      if ((rule & ~state) == 0) {
        next |= Mask{1} << i;
        break;
      }
  }
  return next;
}

}  // namespace

CascadeTrace cascade_trace(const Description& d, Mask initial) {
  if (initial & ~d.full_mask())
    throw validation_error("SchemaError", "initial set leaves the ground set");
  CascadeTrace trace;
  trace.states.push_back(initial);
  for (;;) {
    const Mask next = cascade_step(d, trace.states.back());
    const bool stable = next == trace.states.back();
    trace.states.push_back(next);
    if (stable) {
      trace.converged_at = static_cast<int>(trace.states.size()) - 2;
      break;
    }
  }
  // Each round before convergence infects at least one fresh node.
  LEFF_INTERNAL_CHECK(trace.converged_at <= d.width(),
                      "a cascade must stabilize within |Σ| rounds");
  return trace;
}

Mask cascade_fixpoint(const Description& d, Mask initial) {
  Mask state = initial;
  for (;;) {
    const Mask next = cascade_step(d, state);
    if (next == state) return state;
    state = next;
  }
}

ClosureOperator interpret(const Description& d) {
  auto carrier = std::make_shared<FinitePoset>(FinitePoset::powerset(d.ground));
  std::vector<int> table(carrier->size());
  for (int s = 0; s < carrier->size(); ++s)
    table[s] = static_cast<int>(cascade_fixpoint(d, static_cast<Mask>(s)));
  return ClosureOperator::validate(std::move(carrier), std::move(table));
}

Mask phenome_of(const Description& d) { return cascade_fixpoint(d, 0); }

Description merge(const Description& d1, const Description& d2) {
  if (d1.ground != d2.ground)
    throw validation_error("GroundMismatch", "descriptions live on different node sets");
  std::vector<std::vector<Mask>> rules(d1.rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    rules[i] = d1.rules[i];
    rules[i].insert(rules[i].end(), d2.rules[i].begin(), d2.rules[i].end());
  }
  return Description::make(d1.ground, std::move(rules));
}

Description threshold_description(const std::vector<std::string>& nodes,
                                  const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& thresholds) {
  const int n = static_cast<int>(nodes.size());
  if (static_cast<int>(thresholds.size()) != n)
    throw validation_error("ShapeMismatch", "threshold table does not cover the node set");
  for (int k : thresholds)
    if (k < 0) throw validation_error("SchemaError", "thresholds must be ≥ 0");
  std::vector<Mask> neighbors(n, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
      throw validation_error("SchemaError", "edge references an unknown or reflexive node pair");
    neighbors[a] |= Mask{1} << b;
    neighbors[b] |= Mask{1} << a;
  }
  std::vector<std::vector<Mask>> rules(n);
  for (int i = 0; i < n; ++i) {
    const int k = thresholds[i];
    // All k-element submasks of the neighbor mask.
    Mask sub = neighbors[i];
    for (;;) {
      if (__builtin_popcount(sub) == k) rules[i].push_back(sub);
      if (sub == 0) break;
      sub = (sub - 1) & neighbors[i];
    }
    std::reverse(rules[i].begin(), rules[i].end());
  }
  return Description::make(nodes, std::move(rules));
}

SystemLattice enumerate_systems(const std::vector<std::string>& ground) {
  const auto families = all_moore_families(ground);
  auto carrier = std::make_shared<FinitePoset>(FinitePoset::powerset(ground));
  const Mask full = static_cast<Mask>((1u << ground.size()) - 1);

  std::vector<ClosureOperator> systems;
  std::vector<std::string> labels;
  systems.reserve(families.size());
  for (const auto& fam : families) {
    std::vector<int> table(carrier->size());
    for (int s = 0; s < carrier->size(); ++s) {
      Mask acc = full;
      for (Mask member : fam.members())
        if ((static_cast<Mask>(s) & ~member) == 0) acc &= member;
      table[s] = static_cast<int>(acc);
    }
    systems.push_back(ClosureOperator::validate(carrier, std::move(table)));
    std::string label = "⟨";
    for (std::size_t i = 0; i < fam.members().size(); ++i) {
      if (i) label += ",";
      label += subset_label(fam.members()[i], ground);
    }
    label += "⟩";
    labels.push_back(std::move(label));
  }

  const int k = static_cast<int>(systems.size());
  BitMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (systems[i].leq(systems[j])) m.set(i, j);
  return SystemLattice{FinitePoset::validate(std::move(labels), std::move(m)),
                       std::move(systems)};
}

int SystemLattice::index_of(const ClosureOperator& f) const {
  for (std::size_t i = 0; i < systems.size(); ++i)
    if (same_carrier(systems[i].carrier(), f.carrier()) &&
        systems[i].table() == f.table())
      return static_cast<int>(i);
  return -1;
}

SystemLattice phenome_veil_systems(const std::vector<std::string>& ground) {
  return enumerate_systems(ground);
}

Veil phenome_veil(const std::vector<std::string>& ground) {
  if (ground.size() > 3)
    throw validation_error("GroundSetTooLarge",
                           "the full System lattice is only materialized for ≤ 3 nodes");
  SystemLattice lattice = enumerate_systems(ground);
  auto systems = std::make_shared<FinitePoset>(std::move(lattice.poset));
  PosetPtr phenomes = lattice.systems.front().carrier_ptr();

  std::vector<int> table(systems->size());
  for (int i = 0; i < systems->size(); ++i) table[i] = lattice.systems[i](0);
  Veil v = Veil::validate(MonotoneMap::validate(systems, phenomes, std::move(table)));

  // The minimum system explaining S must be T ↦ T ∪ S.
  for (int p = 0; p < v.phenome().size(); ++p) {
    const ClosureOperator& adj = lattice.systems[v.left_adjoint(p)];
    for (int t = 0; t < v.phenome().size(); ++t)
      LEFF_INTERNAL_CHECK(adj(t) == (t | p),
                          "left adjoint of the least-fixed-point veil must be T ↦ T ∪ S");
  }
  return v;
}

Veil zoom_in_veil(const ClosureOperator& f) {
  FixedPoints fp = fixed_points(f);
  auto systems = std::make_shared<FinitePoset>(std::move(fp.poset));
  Veil v = Veil::validate(
      MonotoneMap::validate(systems, f.carrier_ptr(), fp.carrier_index));

  std::vector<int> sub_index(f.carrier().size(), -1);
  for (std::size_t i = 0; i < fp.carrier_index.size(); ++i)
    sub_index[fp.carrier_index[i]] = static_cast<int>(i);
  for (int p = 0; p < f.carrier().size(); ++p)
    LEFF_INTERNAL_CHECK(v.left_adjoint(p) == sub_index[f(p)],
                        "left adjoint of a zoom-in veil must be the closure operator itself");
  return v;
}

}  // namespace leff
