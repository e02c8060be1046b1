#include "leff/galois.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace leff {

namespace {

void require_cocomplete(const FinitePreorder& p, const char* side) {
  if (!is_finitely_cocomplete(p))
    throw validation_error("CarrierNotCocomplete",
                           std::string(side) + " carrier is not finitely cocomplete");
}

int join_or_die(const FinitePreorder& p, int x, int y, const char* what) {
  auto j = join_any(p, x, y);
  LEFF_INTERNAL_CHECK(j.has_value(), std::string("join must exist in ") + what);
  return *j;
}

}  // namespace

Veil Veil::validate(MonotoneMap phi) {
  require_cocomplete(phi.domain(), "system");
  require_cocomplete(phi.codomain(), "phenome");

  const FinitePreorder& sys = phi.domain();
  const FinitePreorder& phen = phi.codomain();
  std::vector<int> adjoint(phen.size(), -1);
  for (int p = 0; p < phen.size(); ++p) {
    IndexSet explaining = make_index_set(sys.size());
    for (int s = 0; s < sys.size(); ++s)
      if (phen.leq(p, phi(s))) index_set_add(explaining, s);
    auto min = find_minimum(sys, explaining);
    if (!min) {
      std::vector<int> antichain = minimal_members(sys, explaining);
      std::vector<Violation> violations;
      std::string detail = "phenome " + phen.label(p) + " has " +
                           std::to_string(antichain.size()) + " minimal explanations";
      violations.push_back({"NoMinimumExplanation", antichain, std::move(detail)});
      violations.back().where.insert(violations.back().where.begin(), p);
      throw validation_error("NoMinimumExplanation",
                             "some phenome has no unique minimum explaining system",
                             std::move(violations));
    }
    adjoint[p] = *min;
  }
  return Veil(std::move(phi), std::move(adjoint));
}

std::vector<EffectWitness> detect_effects(const Veil& v, const DetectOptions& opts) {
  const FinitePreorder& sys = v.system();
  const FinitePreorder& phen = v.phenome();
  std::vector<EffectWitness> out;

  auto probe = [&](int s, int s2) {
    const int js = join_or_die(sys, s, s2, "System");
    const int lhs = v.apply(js);
    const int rhs = join_or_die(phen, v.apply(s), v.apply(s2), "Phenome");
    if (lhs != rhs) {
      LEFF_INTERNAL_CHECK(phen.leq(rhs, lhs),
                          "phenome join may never exceed the image of the system join");
      out.push_back(EffectWitness{s, s2, lhs, rhs});
    }
  };

  if (opts.mode == DetectMode::exhaustive) {
    const std::uint64_t n = static_cast<std::uint64_t>(sys.size());
    const std::uint64_t pairs = n * (n + 1) / 2;
    if (pairs > opts.pair_budget)
      throw validation_error("BudgetExceeded",
                             "exhaustive detection over " + std::to_string(pairs) +
                                 " pairs exceeds the budget of " +
                                 std::to_string(opts.pair_budget) +
                                 " (raise LATTICE_EFFECTS_BUDGET)");
    for (int s = 0; s < sys.size(); ++s)
      for (int s2 = s; s2 < sys.size(); ++s2) probe(s, s2);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, sys.size() - 1);
    for (int i = 0; i < opts.samples; ++i) {
      int s = pick(rng);
      int s2 = pick(rng);
      if (s > s2) std::swap(s, s2);
      probe(s, s2);
    }
    std::sort(out.begin(), out.end(), [](const EffectWitness& a, const EffectWitness& b) {
      return std::tie(a.s, a.s_prime) < std::tie(b.s, b.s_prime);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

bool witness_holds(const Veil& v, const EffectWitness& w) {
  const int js = join_or_die(v.system(), w.s, w.s_prime, "System");
  const int rhs = join_or_die(v.phenome(), v.apply(w.s), v.apply(w.s_prime), "Phenome");
  return v.apply(js) == w.lhs && rhs == w.rhs && w.lhs != w.rhs;
}

KernelOperator derived_kernel(const Veil& v) {
  const FinitePreorder& sys = v.system();
  std::vector<int> table(sys.size());
  for (int s = 0; s < sys.size(); ++s) table[s] = v.left_adjoint(v.apply(s));
  auto carrier = std::make_shared<FinitePoset>(
      FinitePoset::require(sys));
  try {
    return KernelOperator::validate(std::move(carrier), std::move(table));
  } catch (const validation_error& e) {
    throw internal_error(std::string("FΦ of a validated veil must be a kernel operator: ") +
                         e.what());
  }
}

ClosureOperator derived_closure(const Veil& v) {
  const FinitePreorder& phen = v.phenome();
  std::vector<int> table(phen.size());
  for (int p = 0; p < phen.size(); ++p) table[p] = v.apply(v.left_adjoint(p));
  auto carrier = std::make_shared<FinitePoset>(FinitePoset::require(phen));
  try {
    return ClosureOperator::validate(std::move(carrier), std::move(table));
  } catch (const validation_error& e) {
    throw internal_error(std::string("ΦF of a validated veil must be a closure operator: ") +
                         e.what());
  }
}

Veil compose(const Veil& v2, const Veil& v1) {
  if (!same_carrier(v1.phenome(), v2.system()))
    throw validation_error("CarrierMismatch",
                           "composition requires phenome(v1) = system(v2)");
  std::vector<int> table(v1.system().size());
  for (int s = 0; s < v1.system().size(); ++s) table[s] = v2.apply(v1.apply(s));
  try {
    Veil out = Veil::validate(MonotoneMap::validate(v1.phi().domain_ptr(),
                                                    v2.phi().codomain_ptr(), std::move(table)));
    for (int p = 0; p < out.phenome().size(); ++p)
      LEFF_INTERNAL_CHECK(out.left_adjoint(p) == v1.left_adjoint(v2.left_adjoint(p)),
                          "composite adjoint must be F1 ∘ F2");
    return out;
  } catch (const validation_error& e) {
    throw internal_error(std::string("the composition of two veils must be a veil: ") +
                         e.what());
  }
}

VeilFactorization factorize(const Veil& v) {
  const FinitePreorder& sys = v.system();
  const FinitePreorder& phen = v.phenome();
  std::vector<int> image;
  {
    std::set<int> seen;
    for (int s = 0; s < sys.size(); ++s) seen.insert(v.apply(s));
    image.assign(seen.begin(), seen.end());
  }
  auto mid = std::make_shared<FinitePoset>(FinitePoset::induced(phen, image));
  std::vector<int> to_mid(phen.size(), -1);
  for (std::size_t q = 0; q < image.size(); ++q) to_mid[image[q]] = static_cast<int>(q);

  std::vector<int> pi_table(sys.size());
  for (int s = 0; s < sys.size(); ++s) pi_table[s] = to_mid[v.apply(s)];
  std::vector<int> iota_table(image.begin(), image.end());

  try {
    Veil pi =
        Veil::validate(MonotoneMap::validate(v.phi().domain_ptr(), mid, std::move(pi_table)));
    Veil iota = Veil::validate(
        MonotoneMap::validate(mid, v.phi().codomain_ptr(), std::move(iota_table)));
    for (int s = 0; s < sys.size(); ++s)
      LEFF_INTERNAL_CHECK(iota.apply(pi.apply(s)) == v.apply(s),
                          "factorization must recompose to the original veil");
    return VeilFactorization{*mid, std::move(image), std::move(pi), std::move(iota)};
  } catch (const validation_error& e) {
    throw internal_error(std::string("both factor components of a veil must be veils: ") +
                         e.what());
  }
}

Veil veil_by_meets(MonotoneMap phi) {
  const FinitePreorder& sys = phi.domain();
  const FinitePreorder& phen = phi.codomain();
  if (!is_complete_lattice(sys) || !is_complete_lattice(phen))
    throw validation_error("CarrierNotComplete",
                           "meet-preservation criterion needs complete-lattice carriers");

  // Top preservation is the empty meet; pairwise meets generate the rest on a
  // finite carrier.
  const int sys_top = *top(sys);
  const int phen_top = *top(phen);
  if (phi(sys_top) != phen_top) {
    std::vector<Violation> violations{
        {"MeetNotPreserved", {}, "empty meet: Φ(⊤) = " + phen.label(phi(sys_top)) +
                                     " ≠ " + phen.label(phen_top)}};
    throw validation_error("MeetNotPreserved", "map does not preserve the empty meet",
                           std::move(violations));
  }
  for (int x = 0; x < sys.size(); ++x)
    for (int y = x + 1; y < sys.size(); ++y) {
      const int mx = *meet_any(sys, x, y);
      const int mp = *meet_any(phen, phi(x), phi(y));
      if (phi(mx) != mp) {
        std::vector<Violation> violations{
            {"MeetNotPreserved",
             {x, y},
             "Φ(" + sys.label(x) + " ∧ " + sys.label(y) + ") = " + phen.label(phi(mx)) +
                 " ≠ " + phen.label(mp)}};
        throw validation_error("MeetNotPreserved", "map does not preserve some pairwise meet",
                               std::move(violations));
      }
    }
  try {
    return Veil::validate(std::move(phi));
  } catch (const validation_error& e) {
    throw internal_error(
        std::string("an order- and meet-preserving map between complete lattices "
                    "must be a veil: ") +
        e.what());
  }
}

Veil dual_veil(const Veil& v) {
  auto dual_sys = std::make_shared<FinitePoset>(FinitePoset::dual_of(v.system()));
  auto dual_phen = std::make_shared<FinitePoset>(FinitePoset::dual_of(v.phenome()));
  return Veil::validate(MonotoneMap::validate(dual_phen, dual_sys, v.adjoint_table()));
}

namespace {

std::vector<std::string> pair_labels(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back("(" + x + "," + y + ")");
  return out;
}

}  // namespace

Veil forall_relation_veil(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  if (na * nb > 16)
    throw validation_error("GroundSetTooLarge", "relation carrier exceeds the tabulation cap");
  auto systems = std::make_shared<FinitePoset>(FinitePoset::powerset(pair_labels(a, b)));
  auto phenomes = std::make_shared<FinitePoset>(FinitePoset::powerset(a));
  std::vector<int> table(systems->size());
  for (int r = 0; r < systems->size(); ++r) {
    Mask out = 0;
    for (int x = 0; x < na; ++x) {
      bool all = true;
      for (int y = 0; y < nb && all; ++y)
        if (!(r >> (x * nb + y) & 1)) all = false;
      if (all) out |= Mask{1} << x;
    }
    table[r] = static_cast<int>(out);
  }
  return Veil::validate(MonotoneMap::validate(systems, phenomes, std::move(table)));
}

Veil exists_relation_veil(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  if ((std::uint64_t{1} << (na * nb)) > static_cast<std::uint64_t>(kMaxExplicitElements))
    throw validation_error("GroundSetTooLarge",
                           "dualized relation carrier exceeds the explicit cap");
  auto systems = std::make_shared<FinitePoset>(
      FinitePoset::dual_of(FinitePoset::powerset(pair_labels(a, b))));
  auto phenomes =
      std::make_shared<FinitePoset>(FinitePoset::dual_of(FinitePoset::powerset(a)));
  std::vector<int> table(systems->size());
  for (int r = 0; r < systems->size(); ++r) {
    Mask out = 0;
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y)
        if (r >> (x * nb + y) & 1) out |= Mask{1} << x;
    table[r] = static_cast<int>(out);
  }
  return Veil::validate(MonotoneMap::validate(systems, phenomes, std::move(table)));
}

Veil behavior_projection_veil(const std::vector<std::string>& s,
                              const std::vector<std::string>& s_prime) {
  const int ns = static_cast<int>(s.size());
  const int np = static_cast<int>(s_prime.size());
  if ((std::uint64_t{1} << (ns * np)) > static_cast<std::uint64_t>(kMaxExplicitElements))
    throw validation_error("GroundSetTooLarge", "universum exceeds the explicit cap");
  auto systems = std::make_shared<FinitePoset>(
      FinitePoset::dual_of(FinitePoset::powerset(pair_labels(s, s_prime))));
  auto phenomes = std::make_shared<FinitePoset>(FinitePoset::dual_of(FinitePoset::powerset(s)));
  std::vector<int> table(systems->size());
  for (int beh = 0; beh < systems->size(); ++beh) {
    Mask out = 0;
    for (int x = 0; x < ns; ++x)
      for (int y = 0; y < np; ++y)
        if (beh >> (x * np + y) & 1) out |= Mask{1} << x;
    table[beh] = static_cast<int>(out);
  }
  return Veil::validate(MonotoneMap::validate(systems, phenomes, std::move(table)));
}

Veil interdependence_veil(const std::vector<std::string>& s,
                          const std::vector<std::string>& s_prime) {
  const int ns = static_cast<int>(s.size());
  const int np = static_cast<int>(s_prime.size());
  if ((std::uint64_t{1} << (ns * np)) > static_cast<std::uint64_t>(kMaxExplicitElements))
    throw validation_error("GroundSetTooLarge", "universum exceeds the explicit cap");
  auto systems = std::make_shared<FinitePoset>(
      FinitePoset::dual_of(FinitePoset::powerset(pair_labels(s, s_prime))));
  auto phenomes = std::make_shared<FinitePoset>(
      FinitePoset::product(FinitePoset::dual_of(FinitePoset::powerset(s)),
                           FinitePoset::dual_of(FinitePoset::powerset(s_prime))));
  const int phen_cols = 1 << np;
  std::vector<int> table(systems->size());
  for (int beh = 0; beh < systems->size(); ++beh) {
    Mask px = 0, py = 0;
    for (int x = 0; x < ns; ++x)
      for (int y = 0; y < np; ++y)
        if (beh >> (x * np + y) & 1) {
          px |= Mask{1} << x;
          py |= Mask{1} << y;
        }
    table[beh] = static_cast<int>(px) * phen_cols + static_cast<int>(py);
  }
  return Veil::validate(MonotoneMap::validate(systems, phenomes, std::move(table)));
}

Mask relation_transitive_closure(Mask rel, int n) {
  Mask out = rel;
  for (bool grew = true; grew;) {
    grew = false;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (!(out >> (i * n + k) & 1)) continue;
        for (int j = 0; j < n; ++j)
          if ((out >> (k * n + j) & 1) && !(out >> (i * n + j) & 1)) {
            out |= Mask{1} << (i * n + j);
            grew = true;
          }
      }
  }
  return out;
}

bool relation_is_transitive(Mask rel, int n) {
  return relation_transitive_closure(rel, n) == rel;
}

Veil transitive_closure_veil(const std::vector<std::string>& ground) {
  const int n = static_cast<int>(ground.size());
  if (n * n > 16)
    throw validation_error("GroundSetTooLarge",
                           "relation square exceeds the enumeration cap");
  auto phenomes = std::make_shared<FinitePoset>(FinitePoset::powerset(pair_labels(ground, ground)));
  std::vector<int> transitive;
  for (int rel = 0; rel < phenomes->size(); ++rel)
    if (relation_is_transitive(static_cast<Mask>(rel), n)) transitive.push_back(rel);
  auto systems = std::make_shared<FinitePoset>(FinitePoset::induced(*phenomes, transitive));
  return Veil::validate(MonotoneMap::validate(systems, phenomes, std::move(transitive)));
}

}  // namespace leff
