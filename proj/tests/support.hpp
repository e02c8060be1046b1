#pragma once

// Test-only helpers: seeded generators and independent oracles. Oracles here
// recompute expected values straight from definitions and must stay clear of
// the library's own algorithms.

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "leff/contagion.hpp"
#include "leff/dynamical.hpp"
#include "leff/galois.hpp"
#include "leff/lifts.hpp"
#include "leff/operators.hpp"
#include "leff/order.hpp"

namespace testsupport {

using namespace leff;

inline PosetPtr share(FinitePoset p) {
  return std::make_shared<FinitePoset>(std::move(p));
}
inline PreorderPtr share_pre(FinitePreorder p) {
  return std::make_shared<FinitePreorder>(std::move(p));
}

inline FinitePoset poset_from_pairs(std::vector<std::string> labels,
                                    const std::vector<std::pair<int, int>>& pairs) {
  return FinitePoset::require(FinitePreorder::from_generators(std::move(labels), pairs));
}

inline FinitePoset antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return poset_from_pairs(std::move(labels), {});
}

// a,b below both c,d; the standard no-join shape.
inline FinitePoset bowtie() {
  return poset_from_pairs({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

inline FinitePoset diamond() {
  return poset_from_pairs({"bot", "a", "b", "top"},
                          {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

// --- independent oracles -------------------------------------------------

// Upper bounds straight from the definition.
inline std::vector<int> oracle_upper_bounds(const FinitePreorder& p, int x, int y) {
  std::vector<int> out;
  for (int z = 0; z < p.size(); ++z)
    if (p.leq(x, z) && p.leq(y, z)) out.push_back(z);
  return out;
}

// Least upper bound by scanning all candidates; absent unless exactly one
// member of the upper-bound set lies below all of them.
inline std::optional<int> oracle_join(const FinitePreorder& p, int x, int y) {
  const std::vector<int> ub = oracle_upper_bounds(p, x, y);
  std::vector<int> least;
  for (int m : ub) {
    bool below_all = true;
    for (int u : ub)
      if (!p.leq(m, u)) below_all = false;
    if (below_all) least.push_back(m);
  }
  if (least.size() != 1) return std::nullopt;
  return least.front();
}

inline std::optional<int> oracle_meet(const FinitePreorder& p, int x, int y) {
  std::vector<int> lb;
  for (int z = 0; z < p.size(); ++z)
    if (p.leq(z, x) && p.leq(z, y)) lb.push_back(z);
  std::vector<int> greatest;
  for (int m : lb) {
    bool above_all = true;
    for (int l : lb)
      if (!p.leq(l, m)) above_all = false;
    if (above_all) greatest.push_back(m);
  }
  if (greatest.size() != 1) return std::nullopt;
  return greatest.front();
}

// Definitional check of the three closure axioms over the whole carrier.
inline bool oracle_is_closure(const FinitePoset& carrier, const std::vector<int>& table) {
  for (int x = 0; x < carrier.size(); ++x) {
    if (!carrier.leq(x, table[x])) return false;
    if (table[table[x]] != table[x]) return false;
    for (int y = 0; y < carrier.size(); ++y)
      if (carrier.leq(x, y) && !carrier.leq(table[x], table[y])) return false;
  }
  return true;
}

inline bool oracle_is_kernel(const FinitePoset& carrier, const std::vector<int>& table) {
  for (int x = 0; x < carrier.size(); ++x) {
    if (!carrier.leq(table[x], x)) return false;
    if (table[table[x]] != table[x]) return false;
    for (int y = 0; y < carrier.size(); ++y)
      if (carrier.leq(x, y) && !carrier.leq(table[x], table[y])) return false;
  }
  return true;
}

// Transitive closure of a relation mask by naive repeated squaring over
// explicit pair loops (independent of the library's Warshall loop).
inline Mask oracle_transitive_closure(Mask rel, int n) {
  auto has = [&](Mask r, int i, int j) { return (r >> (i * n + j)) & 1u; };
  Mask out = rel;
  for (int round = 0; round < n * n; ++round) {
    Mask next = out;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (has(out, i, k) && has(out, k, j)) next |= Mask{1} << (i * n + j);
    out = next;
  }
  return out;
}

// Asynchronous cascade: single-node updates in a seeded random order; the
// final set must match the synchronous engine.
inline Mask oracle_async_cascade(const Description& d, Mask initial, std::mt19937_64& rng) {
  Mask state = initial;
  for (;;) {
    std::vector<int> ready;
    for (int i = 0; i < d.width(); ++i) {
      if (state >> i & 1u) continue;
      for (Mask rule : d.rules[i])
        if ((rule & ~state) == 0) {
          ready.push_back(i);
          break;
        }
    }
    if (ready.empty()) return state;
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    state |= Mask{1} << ready[pick(rng)];
  }
}

// Least trajectory above `base` closed under every timed rule, found by
// enumerating all time-monotone trajectories (per-node entry times) and
// intersecting the closed ones.
inline std::optional<Trajectory> oracle_least_closed_trajectory(const TimedDescription& td,
                                                                const Trajectory& base) {
  const int t_max = base.horizon();
  const int n = td.width();
  std::vector<int> entry(n, 0);  // 0..t_max = entry time, t_max+1 = never
  std::vector<Trajectory> closed;
  for (;;) {
    Trajectory t;
    t.states.assign(static_cast<std::size_t>(t_max) + 1, 0);
    for (int i = 0; i < n; ++i)
      for (int m = entry[i]; m <= t_max; ++m) t.states[m] |= Mask{1} << i;
    bool ok = true;
    for (int m = 0; m <= t_max && ok; ++m)
      if (base.states[m] & ~t.states[m]) ok = false;
    for (int i = 0; i < n && ok; ++i)
      for (const TimedRule& r : td.rules[i]) {
        for (int m = 0; m <= t_max && ok; ++m)
          if ((r.set & ~t.states[m]) == 0 && m + r.delay <= t_max &&
              !(t.states[m + r.delay] >> i & 1u))
            ok = false;
      }
    if (ok) closed.push_back(t);

    int pos = 0;
    while (pos < n && entry[pos] == t_max + 1) entry[pos++] = 0;
    if (pos == n) break;
    ++entry[pos];
  }
  if (closed.empty()) return std::nullopt;
  Trajectory least = closed.front();
  for (const Trajectory& t : closed)
    for (int m = 0; m <= t_max; ++m) least.states[m] &= t.states[m];
  for (const Trajectory& t : closed)
    for (int m = 0; m <= t_max; ++m)
      if (least.states[m] & ~t.states[m]) return std::nullopt;
  return least;
}

// --- seeded generators ----------------------------------------------------

inline FinitePoset random_poset(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> size(1, max_n);
  const int n = size(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < 0.35) pairs.emplace_back(i, j);
  return poset_from_pairs(std::move(labels), pairs);
}

inline FinitePreorder random_preorder(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> size(1, max_n);
  const int n = size(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng) < 0.25) pairs.emplace_back(i, j);
  return FinitePreorder::from_generators(std::move(labels), pairs);
}

// A random Moore family on a small ground set, viewed as a poset: always a
// complete lattice with at most 2^width elements.
inline FinitePoset random_moore_lattice(std::mt19937_64& rng, int width) {
  std::vector<std::string> ground;
  for (int i = 0; i < width; ++i) ground.push_back(std::string(1, static_cast<char>('a' + i)));
  const int subsets = 1 << width;
  const Mask full = static_cast<Mask>(subsets - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::set<Mask> members{full};
  for (int s = 0; s < subsets; ++s)
    if (coin(rng) < 0.4) members.insert(static_cast<Mask>(s));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Mask> snapshot(members.begin(), members.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j)
        if (members.insert(snapshot[i] & snapshot[j]).second) grew = true;
  }
  std::vector<int> elements(members.begin(), members.end());
  return FinitePoset::induced(FinitePoset::powerset(ground), elements);
}

// Monotone map by assigning images along the index order (a linear extension
// for all generators above); nullopt when a prefix cannot be extended.
inline std::optional<MonotoneMap> random_monotone_map(std::mt19937_64& rng,
                                                      const PreorderPtr& dom,
                                                      const PreorderPtr& cod) {
  const int n = dom->size();
  std::vector<int> table(n, -1);
  for (int x = 0; x < n; ++x) {
    std::vector<int> candidates;
    for (int q = 0; q < cod->size(); ++q) {
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) {
        if (dom->leq(y, x) && !cod->leq(table[y], q)) ok = false;
        if (dom->leq(x, y) && !cod->leq(q, table[y])) ok = false;
      }
      if (ok) candidates.push_back(q);
    }
    if (candidates.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    table[x] = candidates[pick(rng)];
  }
  return MonotoneMap::validate(dom, cod, std::move(table));
}

inline Description random_description(std::mt19937_64& rng, int width) {
  std::vector<std::string> ground;
  for (int i = 0; i < width; ++i) ground.push_back(std::string(1, static_cast<char>('A' + i)));
  const Mask full = static_cast<Mask>((1u << width) - 1);
  std::uniform_int_distribution<int> rule_count(0, 3);
  std::uniform_int_distribution<Mask> subset(0, full);
  std::vector<std::vector<Mask>> rules(width);
  for (int i = 0; i < width; ++i) {
    const int k = rule_count(rng);
    for (int r = 0; r < k; ++r) rules[i].push_back(subset(rng));
  }
  return Description::make(std::move(ground), std::move(rules));
}

inline TimedDescription random_timed_description(std::mt19937_64& rng, int width, int d_max) {
  std::vector<std::string> ground;
  for (int i = 0; i < width; ++i) ground.push_back(std::string(1, static_cast<char>('A' + i)));
  const Mask full = static_cast<Mask>((1u << width) - 1);
  std::uniform_int_distribution<int> rule_count(0, 3);
  std::uniform_int_distribution<Mask> subset(0, full);
  std::uniform_int_distribution<int> delay(0, d_max);
  std::vector<std::vector<TimedRule>> rules(width);
  for (int i = 0; i < width; ++i) {
    const int k = rule_count(rng);
    for (int r = 0; r < k; ++r) rules[i].push_back(TimedRule{subset(rng), delay(rng)});
  }
  return TimedDescription::make(std::move(ground), std::move(rules));
}

inline Trajectory random_trajectory(std::mt19937_64& rng, int width, int horizon) {
  const Mask full = static_cast<Mask>((1u << width) - 1);
  std::uniform_int_distribution<Mask> subset(0, full);
  Trajectory t;
  Mask acc = 0;
  for (int m = 0; m <= horizon; ++m) {
    acc |= subset(rng) & full;
    t.states.push_back(acc);
  }
  return t;
}

}  // namespace testsupport
