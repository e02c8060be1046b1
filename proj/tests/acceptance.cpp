// Acceptance suite: one line per criterion, every threshold pinned here.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "leff/contagion.hpp"
#include "leff/dynamical.hpp"
#include "leff/galois.hpp"
#include "leff/lifts.hpp"
#include "leff/operators.hpp"
#include "leff/order.hpp"

#include "support.hpp"

using namespace leff;
using namespace testsupport;

namespace {

struct Criterion {
  int number;
  const char* title;
  double time_limit_seconds;
  std::function<void()> body;
};

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw failure(what);
}

const std::vector<std::string> kAB{"A", "B"};

// ---- stock veil inventory (criteria 5, 7, 10) -----------------------------

std::vector<std::pair<std::string, Veil>> stock_veils() {
  std::vector<std::pair<std::string, Veil>> out;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> ground;
    for (int i = 0; i < n; ++i) ground.push_back(std::string(1, static_cast<char>('A' + i)));
    out.emplace_back("contagion/" + std::to_string(n), phenome_veil(ground));
  }
  for (int na = 1; na <= 3; ++na)
    for (int nb = 1; nb <= 3; ++nb) {
      std::vector<std::string> a, b;
      for (int i = 0; i < na; ++i) a.push_back("a" + std::to_string(i));
      for (int i = 0; i < nb; ++i) b.push_back("b" + std::to_string(i));
      out.emplace_back("forall/" + std::to_string(na) + "x" + std::to_string(nb),
                       forall_relation_veil(a, b));
      out.emplace_back("exists/" + std::to_string(na) + "x" + std::to_string(nb),
                       exists_relation_veil(a, b));
    }
  out.emplace_back("behavior/2x2", behavior_projection_veil({"0", "1"}, {"0", "1"}));
  out.emplace_back("interdependence/2x2", interdependence_veil({"0", "1"}, {"0", "1"}));
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> ground;
    for (int i = 0; i < n; ++i) ground.push_back(std::string(1, static_cast<char>('a' + i)));
    out.emplace_back("transitive/" + std::to_string(n), transitive_closure_veil(ground));
  }
  out.emplace_back("zoomin/chain3",
                   zoom_in_veil(interpret(Description::make(
                       {"a", "b", "c"}, {{}, {0b001}, {0b010}}))));
  out.emplace_back("zoomin/noedge2",
                   zoom_in_veil(interpret(Description::make(kAB, {{}, {}}))));
  out.emplace_back("zoomin/mutual2",
                   zoom_in_veil(interpret(Description::make(kAB, {{0b10}, {0b01}}))));
  {
    std::mt19937_64 rng(424242);
    for (int k = 0; k < 3; ++k)
      out.emplace_back("zoomin/random" + std::to_string(k),
                       zoom_in_veil(interpret(random_description(rng, 3))));
  }
  return out;
}

// ---- criteria -------------------------------------------------------------

void criterion_flagship() {
  const Description s1 = threshold_description(kAB, {{0, 1}}, {2, 1});
  const Description s2 = threshold_description(kAB, {{0, 1}}, {0, 2});
  require(phenome_of(s1) == 0b00, "Φ(S1) must be ∅");
  require(phenome_of(s2) == 0b01, "Φ(S2) must be {A}");
  require(phenome_of(merge(s1, s2)) == 0b11, "Φ(S1 ∨ S2) must be {A,B}");

  const Veil v = phenome_veil(kAB);
  const SystemLattice lattice = phenome_veil_systems(kAB);
  const int i1 = lattice.index_of(interpret(s1));
  const int i2 = lattice.index_of(interpret(s2));
  require(i1 >= 0 && i2 >= 0, "both systems must appear in the System lattice");

  bool found = false;
  for (const EffectWitness& w : detect_effects(v)) {
    const bool pair = (w.s == i1 && w.s_prime == i2) || (w.s == i2 && w.s_prime == i1);
    if (pair) {
      found = true;
      require(w.lhs == 0b11, "witness lhs must be {A,B}");
      require(w.rhs == 0b01, "witness rhs must be {A}");
    }
  }
  require(found, "the (S1,S2) witness must be emitted");
}

void criterion_convergence() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> width(1, 6);
  for (int round = 0; round < 1000; ++round) {
    const Description d = random_description(rng, width(rng));
    const CascadeTrace t = cascade_trace(d, 0);
    require(t.converged_at <= d.width(),
            "cascade exceeded |Σ| rounds at seed round " + std::to_string(round));
    require(t.states[t.converged_at] == t.states[t.converged_at + 1],
            "converged state must repeat");
  }
}

void criterion_join_law() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> width(1, 5);
  for (int round = 0; round < 500; ++round) {
    const int w = width(rng);
    const ClosureOperator f = interpret(random_description(rng, w));
    const ClosureOperator g = interpret(random_description(rng, w));
    require(closure_join(f, g) == join_via_moore_oracle(f, g),
            "join routes disagree at round " + std::to_string(round));
  }
  const auto families = all_moore_families(kAB);
  std::vector<ClosureOperator> ops;
  for (const auto& fam : families) ops.push_back(from_moore_family(fam));
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i; j < ops.size(); ++j)
      require(closure_join(ops[i], ops[j]) == join_via_moore_oracle(ops[i], ops[j]),
              "exhaustive Σ=2 join mismatch");
}

void criterion_syntax_semantics() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> width(1, 5);
  for (int round = 0; round < 500; ++round) {
    const int w = width(rng);
    const Description d1 = random_description(rng, w);
    const Description d2 = random_description(rng, w);
    require(interpret(merge(d1, d2)).table() ==
                closure_join(interpret(d1), interpret(d2)).table(),
            "interpret∘merge differs from closure_join∘interpret at round " +
                std::to_string(round));
  }
}

void criterion_veil_axioms() {
  for (const auto& [name, v] : stock_veils()) {
    for (int p = 0; p < v.phenome().size(); ++p)
      for (int s = 0; s < v.system().size(); ++s)
        require(v.system().leq(v.left_adjoint(p), s) == v.phenome().leq(p, v.apply(s)),
                name + ": adjunction law failed");
    derived_kernel(v);   // validates K.1–K.3
    derived_closure(v);  // validates C.1–C.3
    for (int p = 0; p < v.phenome().size(); ++p)
      for (int q = p; q < v.phenome().size(); ++q) {
        const auto jp = join_any(v.phenome(), p, q);
        const auto js = join_any(v.system(), v.left_adjoint(p), v.left_adjoint(q));
        require(jp && js && v.left_adjoint(*jp) == *js,
                name + ": left adjoint must preserve binary joins");
      }
  }
}

void criterion_negative_control() {
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::string> ground;
    std::vector<std::vector<Mask>> rules(n);
    for (int i = 0; i < n; ++i) {
      ground.push_back("x" + std::to_string(i));
      if (i > 0) rules[i].push_back(Mask{1} << (i - 1));
    }
    const ClosureOperator f = interpret(Description::make(ground, rules));
    require(detect_effects(zoom_in_veil(f)).empty(),
            "chain of length " + std::to_string(n) + " must sustain no effects");
    for (int s = 0; s < f.carrier().size(); ++s)
      for (int s2 = s; s2 < f.carrier().size(); ++s2)
        require(f(s | s2) == (f(s) | f(s2)),
                "chain closure must preserve unions");
  }
}

void criterion_factorization() {
  for (const auto& [name, v] : stock_veils()) {
    const VeilFactorization f = factorize(v);  // components re-validated inside
    for (int s = 0; s < v.system().size(); ++s)
      require(f.iota.apply(f.pi.apply(s)) == v.apply(s), name + ": ι∘π must equal Φ");
    std::vector<bool> hit(f.mid.size(), false);
    for (int s = 0; s < v.system().size(); ++s) hit[f.pi.apply(s)] = true;
    for (bool h : hit) require(h, name + ": π must be surjective");
    std::vector<bool> seen(v.phenome().size(), false);
    for (int q = 0; q < f.mid.size(); ++q) {
      require(!seen[f.iota.apply(q)], name + ": ι must be injective");
      seen[f.iota.apply(q)] = true;
    }
  }
}

void criterion_quotient_lift() {
  // (a) congruence interval and absorption laws, 200 seeds
  std::mt19937_64 rng(1008);
  int built = 0;
  for (int round = 0; built < 200 && round < 600; ++round) {
    auto dom = share(random_moore_lattice(rng, 3));
    auto cod = share(random_moore_lattice(rng, 3));
    auto f = random_monotone_map(rng, dom, cod);
    if (!f) continue;
    ++built;
    const Congruence c = congruence_of(*f);
    for (int a = 0; a < dom->size(); ++a)
      for (int b = 0; b < dom->size(); ++b) {
        const int ab = *join_any(*dom, a, b);
        if (c.class_of[a] == c.class_of[b]) {
          require(c.class_of[b] == c.class_of[ab], "absorption law failed");
          for (int m = 0; m < dom->size(); ++m)
            if (dom->leq(a, m) && dom->leq(m, b))
              require(c.class_of[m] == c.class_of[b], "interval property failed");
        }
      }

    // (b) f = ι∘g∘π commutes and g is the unique filler
    const MapFactorization fac = factor(*f);
    std::vector<int> to_sub(f->codomain().size(), -1);
    for (std::size_t i = 0; i < fac.image.codomain_index.size(); ++i)
      to_sub[fac.image.codomain_index[i]] = static_cast<int>(i);
    for (int p = 0; p < dom->size(); ++p) {
      require(fac.image.codomain_index[fac.g(fac.q.pi(p))] == (*f)(p),
              "factorization must commute");
      require(fac.g(fac.q.pi(p)) == to_sub[(*f)(p)],
              "g is forced pointwise by π-surjectivity and ι-injectivity");
    }

    // (c) effect-witness equivalence through the factorization
    for (int a = 0; a < dom->size(); ++a)
      for (int b = a; b < dom->size(); ++b) {
        const int ab = *join_any(*dom, a, b);
        const bool base = (*f)(ab) != *join_any(f->codomain(), (*f)(a), (*f)(b));
        const int qa = fac.q.pi(a), qb = fac.q.pi(b);
        const int qab = *join_any(fac.q.poset, qa, qb);
        const bool through =
            fac.g(qab) != *join_any(fac.image.poset, fac.g(qa), fac.g(qb));
        require(base == through, "effect witnesses must survive the factorization");
      }
  }
  require(built == 200, "criterion needs 200 generated maps");

  // (d) the filter lift of 200 random monotone maps is a veil
  std::mt19937_64 rng2(1009);
  int lifted = 0;
  for (int round = 0; lifted < 200 && round < 600; ++round) {
    auto dom = share(random_poset(rng2, 8));
    auto cod = share(random_poset(rng2, 8));
    auto f = random_monotone_map(rng2, dom, cod);
    if (!f) continue;
    ++lifted;
    lift_map(*f);  // Veil::validate runs inside
  }
  require(lifted == 200, "criterion needs 200 lifted maps");

  // (e) effect preservation on every pair of the 2×2 ∀-relation map
  const Veil forall = forall_relation_veil({"1", "2"}, {"1", "2"});
  for (int p = 0; p < forall.system().size(); ++p)
    for (int q = p; q < forall.system().size(); ++q) {
      const auto [base, through] = lift_preserves_effects(forall.phi(), p, q);
      require(base == through, "lifted effect flags must agree");
    }
}

void criterion_dynamical() {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> width(1, 5);
  std::uniform_int_distribution<int> dmax(0, 3);
  for (int round = 0; round < 1000; ++round) {
    const TimedDescription td = random_timed_description(rng, width(rng), dmax(rng));
    const CommuteReport r = commuting_square_check(td);
    require(r.pass, "colim∘eval must equal eval∘agg at round " + std::to_string(round));
  }
  for (int w = 1; w <= 3; ++w) {
    std::vector<std::string> ground;
    for (int i = 0; i < w; ++i) ground.push_back(std::string(1, static_cast<char>('A' + i)));
    for (int t = 1; t <= 3; ++t) {
      const TrajectoryLattice lattice = trajectory_lattice(ground, t);
      for (int i = 0; i <= t; ++i) {
        const Veil v = project_at(lattice, ground, i);  // check_veil inside
        require(detect_effects(v).empty(), "per-time projections must sustain no effects");
      }
    }
  }
}

void criterion_meet_criterion() {
  for (const auto& [name, v] : stock_veils())
    veil_by_meets(v.phi());  // must accept exactly the veils check_veil accepts

  std::mt19937_64 rng(1011);
  int built = 0;
  for (int round = 0; built < 100 && round < 400; ++round) {
    auto dom = share(random_moore_lattice(rng, 3));
    auto cod = share(random_moore_lattice(rng, 3));
    auto f = random_monotone_map(rng, dom, cod);
    if (!f) continue;
    ++built;
    bool veil_ok = true, meets_ok = true;
    std::vector<Violation> meet_witness;
    try {
      Veil::validate(*f);
    } catch (const validation_error&) {
      veil_ok = false;
    }
    try {
      veil_by_meets(*f);
    } catch (const validation_error& e) {
      meets_ok = false;
      meet_witness = e.violations();
    }
    require(veil_ok == meets_ok, "the two veil checks must agree");
    if (!meets_ok && !meet_witness.empty() && meet_witness[0].where.size() == 2) {
      const int x = meet_witness[0].where[0];
      const int y = meet_witness[0].where[1];
      const int mx = *meet_any(*dom, x, y);
      require((*f)(mx) != *meet_any(*cod, (*f)(x), (*f)(y)),
              "reported meet witness must re-check");
    }
  }
  require(built == 100, "criterion needs 100 generated maps");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "flagship two-node threshold example", 1.0, criterion_flagship},
      {2, "cascades from ∅ stabilize within |Σ| rounds (1000 seeds)", 10.0,
       criterion_convergence},
      {3, "iterative join equals the Moore-family oracle (500 pairs + Σ=2 exhaustive)",
       30.0, criterion_join_law},
      {4, "interpret∘merge = closure_join∘interpret (500 pairs)", 30.0,
       criterion_syntax_semantics},
      {5, "stock veils: adjunction, derived operators, join-preserving adjoints", 60.0,
       criterion_veil_axioms},
      {6, "directed chains sustain no generative effects (n ≤ 6)", 30.0,
       criterion_negative_control},
      {7, "every stock veil factors as surjective ∘ injective", 60.0,
       criterion_factorization},
      {8, "congruence laws, unique factorization, filter lifts (200 seeds)", 120.0,
       criterion_quotient_lift},
      {9, "colim∘eval = eval∘agg (1000 seeds) and effect-free projections", 60.0,
       criterion_dynamical},
      {10, "meet-preservation criterion agrees with the veil check", 60.0,
       criterion_meet_criterion},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string message;
    bool ok = true;
    try {
      c.body();
    } catch (const std::exception& e) {
      ok = false;
      message = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && elapsed > c.time_limit_seconds) {
      ok = false;
      message = "time limit exceeded";
    }
    std::printf("%s  criterion %2d [%6.2fs/%.0fs]: %s%s%s\n", ok ? "PASS" : "FAIL",
                c.number, elapsed, c.time_limit_seconds, c.title,
                message.empty() ? "" : ": ", message.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
