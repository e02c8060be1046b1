#include "leff/operators.hpp"

#include <algorithm>
#include <map>

namespace leff {

namespace {

struct AxiomSpec {
  const char* inflationary;
  const char* monotone;
  const char* idempotent;
  bool closure;  // inflationary when true, deflationary when false
};

constexpr AxiomSpec kClosureAxioms{"C.1", "C.2", "C.3", true};
constexpr AxiomSpec kKernelAxioms{"K.1", "K.2", "K.3", false};

std::vector<int> check_operator_axioms(const FinitePoset& carrier,
                                       const std::vector<int>& table,
                                       const AxiomSpec& ax) {
  const int n = carrier.size();
  if (static_cast<int>(table.size()) != n)
    throw validation_error("ShapeMismatch", "self-map does not cover the carrier");
  for (int v : table)
    if (v < 0 || v >= n)
      throw validation_error("SchemaError", "self-map leaves the carrier");

  std::vector<Violation> violations;
  for (int x = 0; x < n; ++x) {
    const bool ok = ax.closure ? carrier.leq(x, table[x]) : carrier.leq(table[x], x);
    if (!ok)
      violations.push_back({ax.inflationary, {x},
                            (ax.closure ? "x ≤ f(x) fails at " : "f(x) ≤ x fails at ") +
                                carrier.label(x)});
  }
  if (carrier.is_powerset()) {
    const int w = carrier.powerset_width();
    for (int m = 0; m < n; ++m)
      for (int b = 0; b < w; ++b)
        if (!(m >> b & 1) && !carrier.leq(table[m], table[m | (1 << b)]))
          violations.push_back({ax.monotone, {m, m | (1 << b)},
                                "monotonicity fails between " + carrier.label(m) + " and " +
                                    carrier.label(m | (1 << b))});
  } else {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (carrier.leq(x, y) && !carrier.leq(table[x], table[y]))
          violations.push_back({ax.monotone, {x, y},
                                "monotonicity fails between " + carrier.label(x) + " and " +
                                    carrier.label(y)});
  }
  for (int x = 0; x < n; ++x)
    if (table[table[x]] != table[x])
      violations.push_back({ax.idempotent, {x},
                            "f(f(x)) ≠ f(x) at " + carrier.label(x)});

  if (!violations.empty())
    throw validation_error("AxiomViolation", "self-map violates operator axioms",
                           std::move(violations));
  return table;
}

PosetPtr require_powerset(const ClosureOperator& c, const char* what) {
  if (!c.carrier().is_powerset())
    throw validation_error("NotAPowersetCarrier",
                           std::string(what) + " requires a powerset carrier");
  return c.carrier_ptr();
}

}  // namespace

ClosureOperator ClosureOperator::validate(PosetPtr carrier, std::vector<int> table) {
  LEFF_INTERNAL_CHECK(carrier != nullptr, "closure operator carrier must be present");
  check_operator_axioms(*carrier, table, kClosureAxioms);
  return ClosureOperator(std::move(carrier), std::move(table));
}

KernelOperator KernelOperator::validate(PosetPtr carrier, std::vector<int> table) {
  LEFF_INTERNAL_CHECK(carrier != nullptr, "kernel operator carrier must be present");
  check_operator_axioms(*carrier, table, kKernelAxioms);
  return KernelOperator(std::move(carrier), std::move(table));
}

bool ClosureOperator::leq(const ClosureOperator& g) const {
  LEFF_INTERNAL_CHECK(same_carrier(carrier(), g.carrier()),
                      "operator order needs a shared carrier");
  for (int x = 0; x < carrier().size(); ++x)
    if (!carrier().leq(table_[x], g.table_[x])) return false;
  return true;
}

bool KernelOperator::leq(const KernelOperator& g) const {
  LEFF_INTERNAL_CHECK(same_carrier(carrier(), g.carrier()),
                      "operator order needs a shared carrier");
  for (int x = 0; x < carrier().size(); ++x)
    if (!carrier().leq(table_[x], g.table_[x])) return false;
  return true;
}

MooreFamily MooreFamily::validate(std::vector<std::string> ground, std::vector<Mask> family) {
  if (ground.size() > static_cast<std::size_t>(kMaxPowersetWidth))
    throw validation_error("GroundSetTooLarge", "Moore family ground set exceeds the mask cap");
  const Mask full = static_cast<Mask>((std::uint64_t{1} << ground.size()) - 1);
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<Violation> violations;
  for (Mask m : family)
    if (m & ~full)
      throw validation_error("SchemaError", "family member leaves the ground set");
  if (family.empty() || family.back() != full)
    violations.push_back({"MissingFullSet", {}, "family must contain " + subset_label(full, ground)});
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Mask inter = family[i] & family[j];
      if (!std::binary_search(family.begin(), family.end(), inter))
        violations.push_back({"MissingIntersection",
                              {static_cast<int>(family[i]), static_cast<int>(family[j])},
                              subset_label(family[i], ground) + " ∩ " +
                                  subset_label(family[j], ground) + " = " +
                                  subset_label(inter, ground) + " is missing"});
    }
  if (!violations.empty())
    throw validation_error("NotMooreFamily", "family is not a Moore family",
                           std::move(violations));
  return MooreFamily(std::move(ground), std::move(family));
}

FixedPoints fixed_points(const ClosureOperator& c) {
  const FinitePoset& carrier = c.carrier();
  std::vector<int> fixed;
  for (int x = 0; x < carrier.size(); ++x)
    if (c(x) == x) fixed.push_back(x);
  FinitePoset sub = FinitePoset::induced(carrier, fixed);

  if (is_complete_lattice(carrier)) {
    LEFF_INTERNAL_CHECK(is_complete_lattice(sub),
                        "fixed points of a closure operator on a complete lattice "
                        "must form a complete lattice");
  }
  if (carrier.is_powerset()) {
    // Intersection-closure, checked directly on masks.
    for (std::size_t i = 0; i < fixed.size(); ++i)
      for (std::size_t j = i + 1; j < fixed.size(); ++j) {
        const int inter = fixed[i] & fixed[j];
        LEFF_INTERNAL_CHECK(c(inter) == inter,
                            "fixed points on a powerset carrier must be ∩-closed");
      }
  }
  return FixedPoints{std::move(sub), std::move(fixed)};
}

ClosureOperator closure_join(const ClosureOperator& f, const ClosureOperator& g) {
  if (!same_carrier(f.carrier(), g.carrier()))
    throw validation_error("CarrierMismatch", "operator join needs a shared carrier");
  const FinitePoset& carrier = f.carrier();
  const int n = carrier.size();
  const int height = std::max(1, poset_height(carrier));

  std::vector<int> fg(n);
  for (int x = 0; x < n; ++x) fg[x] = f(g(x));
  std::vector<int> current = fg;
  int rounds = 1;
  for (;; ++rounds) {
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) next[x] = fg[current[x]];
    if (next == current) break;
    LEFF_INTERNAL_CHECK(rounds < height,
                        "operator join must stabilize within the carrier height");
    current = std::move(next);
  }
  return ClosureOperator::validate(f.carrier_ptr(), std::move(current));
}

MooreFamily to_moore_family(const ClosureOperator& c) {
  require_powerset(c, "to_moore_family");
  std::vector<Mask> fixed;
  for (int x = 0; x < c.carrier().size(); ++x)
    if (c(x) == x) fixed.push_back(static_cast<Mask>(x));
  return MooreFamily::validate(c.carrier().ground(), std::move(fixed));
}

ClosureOperator from_moore_family(const MooreFamily& m) {
  auto carrier = std::make_shared<FinitePoset>(FinitePoset::powerset(m.ground()));
  const int n = carrier->size();
  std::vector<int> table(n);
  for (int s = 0; s < n; ++s) {
    Mask acc = m.full_mask();
    for (Mask member : m.members())
      if ((static_cast<Mask>(s) & ~member) == 0) acc &= member;
    table[s] = static_cast<int>(acc);
  }
  return ClosureOperator::validate(std::move(carrier), std::move(table));
}

ClosureOperator join_via_moore_oracle(const ClosureOperator& f, const ClosureOperator& g) {
  if (!same_carrier(f.carrier(), g.carrier()))
    throw validation_error("CarrierMismatch", "operator join needs a shared carrier");
  require_powerset(f, "join_via_moore_oracle");
  const MooreFamily mf = to_moore_family(f);
  const MooreFamily mg = to_moore_family(g);
  std::vector<Mask> inter;
  std::set_intersection(mf.members().begin(), mf.members().end(), mg.members().begin(),
                        mg.members().end(), std::back_inserter(inter));
  return from_moore_family(MooreFamily::validate(mf.ground(), std::move(inter)));
}

ClosureOperator closure_meet(const ClosureOperator& f, const ClosureOperator& g) {
  if (!same_carrier(f.carrier(), g.carrier()))
    throw validation_error("CarrierMismatch", "operator meet needs a shared carrier");
  require_powerset(f, "closure_meet");
  const MooreFamily mf = to_moore_family(f);
  const MooreFamily mg = to_moore_family(g);
  std::vector<Mask> members;
  std::set_union(mf.members().begin(), mf.members().end(), mg.members().begin(),
                 mg.members().end(), std::back_inserter(members));
  // Close the union under pairwise intersection.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j) {
        const Mask inter = members[i] & members[j];
        if (std::find(members.begin(), members.end(), inter) == members.end()) {
          members.push_back(inter);
          grew = true;
        }
      }
  }
  return from_moore_family(MooreFamily::validate(mf.ground(), std::move(members)));
}

std::vector<MooreFamily> all_moore_families(const std::vector<std::string>& ground) {
  if (ground.size() > 4)
    throw validation_error("GroundSetTooLarge",
                           "Moore family enumeration is only feasible for ≤ 4 nodes");
  const int subsets = 1 << ground.size();
  const Mask full = static_cast<Mask>(subsets - 1);
  std::vector<MooreFamily> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    if (!(fam >> full & 1u)) continue;
    std::vector<Mask> members;
    for (int s = 0; s < subsets; ++s)
      if (fam >> s & 1u) members.push_back(static_cast<Mask>(s));
    bool closed = true;
    for (std::size_t i = 0; i < members.size() && closed; ++i)
      for (std::size_t j = i + 1; j < members.size() && closed; ++j)
        if (!(fam >> (members[i] & members[j]) & 1u)) closed = false;
    if (closed) out.push_back(MooreFamily::validate(ground, std::move(members)));
  }
  return out;
}

}  // namespace leff
