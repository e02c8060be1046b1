#include "leff/order.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace leff {

void throw_internal(const char* expr, const char* file, int line,
                    const std::string& what) {
  std::ostringstream os;
  os << "internal invariant failed: " << what << " [" << expr << " at " << file
     << ":" << line << "]";
  throw internal_error(os.str());
}

std::string subset_label(Mask m, const std::vector<std::string>& ground) {
  if (m == 0) return "∅";
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!(m >> i & 1u)) continue;
    if (!first) out += ",";
    out += ground[i];
    first = false;
  }
  out += "}";
  return out;
}

namespace {

constexpr int kMaxReportedViolations = 1000;

void check_element_count(std::size_t n, const char* what) {
  if (n == 0)
    throw validation_error("EmptyCarrier", std::string(what) + ": element set is empty");
  if (n > static_cast<std::size_t>(kMaxExplicitElements))
    throw validation_error("PosetTooLarge",
                           std::string(what) + ": " + std::to_string(n) +
                               " elements exceeds the explicit cap of " +
                               std::to_string(kMaxExplicitElements));
}

}  // namespace

FinitePreorder FinitePreorder::validate(std::vector<std::string> labels, BitMatrix leq) {
  check_element_count(labels.size(), "preorder");
  const int n = static_cast<int>(labels.size());
  if (leq.size() != n)
    throw validation_error("ShapeMismatch", "relation matrix does not match element count");

  std::vector<Violation> violations;
  for (int i = 0; i < n; ++i) {
    if (!leq.get(i, i))
      violations.push_back({"MissingReflexive", {i}, labels[i] + " ≤ " + labels[i] + " missing"});
  }
  for (int i = 0; i < n && static_cast<int>(violations.size()) < kMaxReportedViolations; ++i) {
    for (int k = 0; k < n; ++k) {
      if (!leq.get(i, k)) continue;
      for (int j = 0; j < n; ++j) {
        if (leq.get(k, j) && !leq.get(i, j)) {
          violations.push_back({"BrokenTransitivity",
                                {i, k, j},
                                labels[i] + " ≤ " + labels[k] + " ≤ " + labels[j] +
                                    " but " + labels[i] + " ≤ " + labels[j] + " missing"});
          if (static_cast<int>(violations.size()) >= kMaxReportedViolations) break;
        }
      }
      if (static_cast<int>(violations.size()) >= kMaxReportedViolations) break;
    }
  }
  if (!violations.empty())
    throw validation_error("InvalidPreorder", "relation is not a preorder", std::move(violations));

  FinitePreorder p;
  p.size_ = n;
  p.labels_ = std::move(labels);
  p.geq_ = leq.transposed();
  p.leq_ = std::move(leq);
  p.antisymmetric_ = true;
  for (int i = 0; i < n && p.antisymmetric_; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.leq_.get(i, j) && p.leq_.get(j, i)) {
        p.antisymmetric_ = false;
        break;
      }
  return p;
}

FinitePreorder FinitePreorder::from_generators(std::vector<std::string> labels,
                                               const std::vector<std::pair<int, int>>& pairs) {
  check_element_count(labels.size(), "preorder");
  const int n = static_cast<int>(labels.size());
  BitMatrix m(n);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw validation_error("SchemaError", "relation pair references an unknown element");
    m.set(a, b);
  }
  m.close_reflexive();
  m.close_transitive();
  return validate(std::move(labels), std::move(m));
}

FinitePreorder FinitePreorder::powerset(std::vector<std::string> ground) {
  if (ground.size() > static_cast<std::size_t>(kMaxPowersetWidth))
    throw validation_error("GroundSetTooLarge",
                           "ground set of " + std::to_string(ground.size()) +
                               " labels exceeds the bit-mask cap of " +
                               std::to_string(kMaxPowersetWidth));
  FinitePreorder p;
  p.powerset_width_ = static_cast<int>(ground.size());
  p.size_ = 1 << ground.size();
  p.ground_ = std::move(ground);
  p.antisymmetric_ = true;
  return p;
}

std::string FinitePreorder::label(int x) const {
  if (is_powerset()) return subset_label(static_cast<Mask>(x), ground_);
  return labels_[x];
}

std::vector<std::string> FinitePreorder::all_labels() const {
  if (!is_powerset()) return labels_;
  std::vector<std::string> out;
  out.reserve(size_);
  for (int i = 0; i < size_; ++i) out.push_back(label(i));
  return out;
}

bool operator==(const FinitePreorder& a, const FinitePreorder& b) {
  if (a.size_ != b.size_ || a.powerset_width_ != b.powerset_width_) return false;
  if (a.is_powerset()) return a.ground_ == b.ground_;
  return a.labels_ == b.labels_ && a.leq_ == b.leq_;
}

FinitePoset FinitePoset::validate(std::vector<std::string> labels, BitMatrix leq) {
  return require(FinitePreorder::validate(std::move(labels), std::move(leq)));
}

FinitePoset FinitePoset::require(FinitePreorder p) {
  if (!p.is_antisymmetric()) {
    std::vector<Violation> violations;
    for (int i = 0; i < p.size(); ++i)
      for (int j = i + 1; j < p.size(); ++j)
        if (p.leq(i, j) && p.leq(j, i)) {
          violations.push_back({"NotAntisymmetric",
                                {i, j},
                                p.label(i) + " and " + p.label(j) + " form a cycle"});
          if (static_cast<int>(violations.size()) >= kMaxReportedViolations) break;
        }
    throw validation_error("NotAPoset", "relation has non-antisymmetric cycles",
                           std::move(violations));
  }
  return FinitePoset(std::move(p));
}

FinitePoset FinitePoset::powerset(std::vector<std::string> ground) {
  return FinitePoset(FinitePreorder::powerset(std::move(ground)));
}

FinitePoset FinitePoset::chain(int n) {
  check_element_count(static_cast<std::size_t>(n > 0 ? n : 0), "chain");
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j);
  return FinitePoset::validate(std::move(labels), std::move(m));
}

FinitePoset FinitePoset::dual_of(const FinitePreorder& p) {
  check_element_count(static_cast<std::size_t>(p.size()), "order dual");
  const int n = p.size();
  BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(j, i)) m.set(i, j);
  return FinitePoset::validate(p.all_labels(), std::move(m));
}

FinitePoset FinitePoset::induced(const FinitePreorder& host, const std::vector<int>& elements) {
  check_element_count(elements.size(), "induced sub-poset");
  const int n = static_cast<int>(elements.size());
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int e : elements) labels.push_back(host.label(e));
  BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (host.leq(elements[i], elements[j])) m.set(i, j);
  return FinitePoset::validate(std::move(labels), std::move(m));
}

FinitePoset FinitePoset::product(const FinitePoset& a, const FinitePoset& b) {
  const std::size_t n = static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size());
  check_element_count(n, "product poset");
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) labels.push_back(a.label(i) + "×" + b.label(j));
  BitMatrix m(static_cast<int>(n));
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      for (int k = 0; k < a.size(); ++k)
        for (int l = 0; l < b.size(); ++l)
          if (a.leq(i, k) && b.leq(j, l)) m.set(i * b.size() + j, k * b.size() + l);
  return FinitePoset::validate(std::move(labels), std::move(m));
}

IndexSet make_index_set(int n) { return IndexSet(static_cast<std::size_t>((n + 63) / 64), 0); }

void index_set_add(IndexSet& s, int i) { s[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool index_set_has(const IndexSet& s, int i) { return (s[i >> 6] >> (i & 63)) & 1u; }

int index_set_count(const IndexSet& s) {
  int c = 0;
  for (std::uint64_t w : s) c += __builtin_popcountll(w);
  return c;
}

std::optional<int> find_minimum(const FinitePreorder& p, const IndexSet& members) {
  int candidate = -1;
  index_set_for_each(members, [&](int i) {
    if (candidate < 0 || p.leq(i, candidate)) candidate = i;
  });
  if (candidate < 0) return std::nullopt;
  bool is_min = true, unique = true;
  index_set_for_each(members, [&](int i) {
    if (!p.leq(candidate, i)) is_min = false;
    if (i != candidate && p.leq(i, candidate)) unique = false;
  });
  if (!is_min || !unique) return std::nullopt;
  return candidate;
}

std::optional<int> find_maximum(const FinitePreorder& p, const IndexSet& members) {
  int candidate = -1;
  index_set_for_each(members, [&](int i) {
    if (candidate < 0 || p.leq(candidate, i)) candidate = i;
  });
  if (candidate < 0) return std::nullopt;
  bool is_max = true, unique = true;
  index_set_for_each(members, [&](int i) {
    if (!p.leq(i, candidate)) is_max = false;
    if (i != candidate && p.leq(candidate, i)) unique = false;
  });
  if (!is_max || !unique) return std::nullopt;
  return candidate;
}

std::vector<int> minimal_members(const FinitePreorder& p, const IndexSet& members) {
  std::vector<int> all;
  index_set_for_each(members, [&](int i) { all.push_back(i); });
  std::vector<int> out;
  for (int i : all) {
    bool minimal = true;
    for (int j : all)
      if (j != i && p.strictly_less(j, i)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(i);
  }
  return out;
}

std::vector<int> maximal_members(const FinitePreorder& p, const IndexSet& members) {
  std::vector<int> all;
  index_set_for_each(members, [&](int i) { all.push_back(i); });
  std::vector<int> out;
  for (int i : all) {
    bool maximal = true;
    for (int j : all)
      if (j != i && p.strictly_less(i, j)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(i);
  }
  return out;
}

std::optional<int> join_any(const FinitePreorder& p, int x, int y) {
  if (p.is_powerset()) return static_cast<int>(static_cast<Mask>(x) | static_cast<Mask>(y));
  IndexSet ub = make_index_set(p.size());
  const std::uint64_t* rx = p.up_row(x);
  const std::uint64_t* ry = p.up_row(y);
  for (std::size_t w = 0; w < ub.size(); ++w) ub[w] = rx[w] & ry[w];
  return find_minimum(p, ub);
}

std::optional<int> meet_any(const FinitePreorder& p, int x, int y) {
  if (p.is_powerset()) return static_cast<int>(static_cast<Mask>(x) & static_cast<Mask>(y));
  IndexSet lb = make_index_set(p.size());
  const std::uint64_t* rx = p.down_row(x);
  const std::uint64_t* ry = p.down_row(y);
  for (std::size_t w = 0; w < lb.size(); ++w) lb[w] = rx[w] & ry[w];
  return find_maximum(p, lb);
}

namespace {
void require_poset(const FinitePreorder& p, const char* op) {
  if (!p.is_antisymmetric())
    throw validation_error("NotAPoset",
                           std::string(op) + " requires an antisymmetric carrier");
}
}  // namespace

std::optional<int> join(const FinitePreorder& p, int x, int y) {
  require_poset(p, "join");
  return join_any(p, x, y);
}

std::optional<int> meet(const FinitePreorder& p, int x, int y) {
  require_poset(p, "meet");
  return meet_any(p, x, y);
}

std::optional<int> bottom(const FinitePreorder& p) {
  if (p.is_powerset()) return 0;
  IndexSet all = make_index_set(p.size());
  for (int i = 0; i < p.size(); ++i) index_set_add(all, i);
  return find_minimum(p, all);
}

std::optional<int> top(const FinitePreorder& p) {
  if (p.is_powerset()) return p.size() - 1;
  IndexSet all = make_index_set(p.size());
  for (int i = 0; i < p.size(); ++i) index_set_add(all, i);
  return find_maximum(p, all);
}

bool is_finitely_cocomplete(const FinitePreorder& p) {
  if (p.is_powerset()) return true;
  // Cocomplete forces antisymmetric (least upper bounds are unique), so a
  // genuine cycle settles the answer immediately.
  if (!p.is_antisymmetric()) return false;
  if (!bottom(p).has_value()) return false;
  for (int x = 0; x < p.size(); ++x)
    for (int y = x + 1; y < p.size(); ++y)
      if (!join_any(p, x, y).has_value()) return false;
  LEFF_INTERNAL_CHECK(p.is_antisymmetric(),
                      "finitely cocomplete relation must be antisymmetric");
  return true;
}

bool is_finitely_complete(const FinitePreorder& p) {
  if (p.is_powerset()) return true;
  if (!top(p).has_value()) return false;
  for (int x = 0; x < p.size(); ++x)
    for (int y = x + 1; y < p.size(); ++y)
      if (!meet_any(p, x, y).has_value()) return false;
  return true;
}

bool is_complete_lattice(const FinitePreorder& p) {
  return is_finitely_cocomplete(p) && is_finitely_complete(p);
}

std::vector<std::pair<int, int>> hasse_cover(const FinitePoset& p) {
  std::vector<std::pair<int, int>> covers;
  if (p.is_powerset()) {
    const int w = p.powerset_width();
    for (int m = 0; m < p.size(); ++m)
      for (int b = 0; b < w; ++b)
        if (!(m >> b & 1)) covers.emplace_back(m, m | (1 << b));
    return covers;
  }
  const int words = p.row_words();
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (x == y || !p.leq(x, y)) continue;
      const std::uint64_t* ux = p.up_row(x);
      const std::uint64_t* dy = p.down_row(y);
      bool between = false;
      for (int w = 0; w < words && !between; ++w) {
        std::uint64_t mid = ux[w] & dy[w];
        // mask out the endpoints themselves
        if (x >> 6 == w) mid &= ~(std::uint64_t{1} << (x & 63));
        if (y >> 6 == w) mid &= ~(std::uint64_t{1} << (y & 63));
        between = mid != 0;
      }
      if (!between) covers.emplace_back(x, y);
    }
  }
  return covers;
}

int poset_height(const FinitePoset& p) {
  if (p.is_powerset()) return p.powerset_width();
  const int n = p.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> downsize(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p.leq(y, x)) ++downsize[x];
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return downsize[a] < downsize[b]; });
  std::vector<int> h(n, 0);
  int best = 0;
  for (int y : order) {
    for (int x = 0; x < n; ++x)
      if (x != y && p.leq(x, y)) h[y] = std::max(h[y], h[x] + 1);
    best = std::max(best, h[y]);
  }
  return best;
}

MonotoneMap MonotoneMap::validate(PreorderPtr domain, PreorderPtr codomain,
                                  std::vector<int> assignment) {
  LEFF_INTERNAL_CHECK(domain && codomain, "monotone map carriers must be present");
  const FinitePreorder& dom = *domain;
  const FinitePreorder& cod = *codomain;
  if (static_cast<int>(assignment.size()) != dom.size())
    throw validation_error("ShapeMismatch", "assignment does not cover the domain");
  for (int v : assignment)
    if (v < 0 || v >= cod.size())
      throw validation_error("SchemaError", "assignment maps outside the codomain");

  std::vector<Violation> violations;
  auto report = [&](int x, int y) {
    violations.push_back({"NotMonotone",
                          {x, y},
                          dom.label(x) + " ≤ " + dom.label(y) + " but " +
                              cod.label(assignment[x]) + " ≰ " + cod.label(assignment[y])});
  };
  if (dom.is_powerset()) {
    // Monotone along single-bit covers implies monotone: every inclusion is a
    // chain of bit additions.
    const int w = dom.powerset_width();
    for (int m = 0; m < dom.size() && static_cast<int>(violations.size()) < kMaxReportedViolations; ++m)
      for (int b = 0; b < w; ++b)
        if (!(m >> b & 1) && !cod.leq(assignment[m], assignment[m | (1 << b)]))
          report(m, m | (1 << b));
  } else {
    for (int x = 0; x < dom.size() && static_cast<int>(violations.size()) < kMaxReportedViolations; ++x)
      for (int y = 0; y < dom.size(); ++y)
        if (dom.leq(x, y) && !cod.leq(assignment[x], assignment[y])) report(x, y);
  }
  if (!violations.empty())
    throw validation_error("NotMonotone", "map is not order-preserving", std::move(violations));
  return MonotoneMap(std::move(domain), std::move(codomain), std::move(assignment));
}

bool same_carrier(const FinitePreorder& a, const FinitePreorder& b) {
  return &a == &b || a == b;
}

bool extensionally_equal(const MonotoneMap& f, const MonotoneMap& g) {
  return same_carrier(f.domain(), g.domain()) && same_carrier(f.codomain(), g.codomain()) &&
         f.table() == g.table();
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (!same_carrier(f.codomain(), g.domain()))
    throw validation_error("CarrierMismatch",
                           "composition requires cod(inner) = dom(outer)");
  std::vector<int> table(f.domain().size());
  for (int x = 0; x < f.domain().size(); ++x) table[x] = g(f(x));
  return MonotoneMap::validate(f.domain_ptr(), g.codomain_ptr(), std::move(table));
}

MapSpace map_space(const PreorderPtr& domain, const PreorderPtr& codomain) {
  const FinitePreorder& dom = *domain;
  const FinitePreorder& cod = *codomain;
  // |codomain|^|domain| bounds the candidate space; overflow-safe product.
  double estimate = 1.0;
  for (int i = 0; i < dom.size(); ++i) {
    estimate *= static_cast<double>(cod.size());
    if (estimate > static_cast<double>(kMaxExplicitElements)) break;
  }
  if (estimate > static_cast<double>(kMaxExplicitElements))
    throw validation_error("SpaceTooLarge",
                           "|codomain|^|domain| exceeds the map-space cap of " +
                               std::to_string(kMaxExplicitElements));

  std::vector<std::vector<int>> functions;
  std::vector<int> partial(dom.size(), -1);
  // Depth-first over assignments in index order; monotonicity is checked
  // against all previously assigned positions, pruning dead prefixes.
  auto assign = [&](auto&& self, int x) -> void {
    if (x == dom.size()) {
      functions.push_back(partial);
      return;
    }
    for (int v = 0; v < cod.size(); ++v) {
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) {
        if (dom.leq(y, x) && !cod.leq(partial[y], v)) ok = false;
        if (dom.leq(x, y) && !cod.leq(v, partial[y])) ok = false;
      }
      if (!ok) continue;
      partial[x] = v;
      self(self, x + 1);
      partial[x] = -1;
    }
  };
  assign(assign, 0);

  const int k = static_cast<int>(functions.size());
  check_element_count(functions.size(), "map space");
  std::vector<std::string> labels;
  labels.reserve(k);
  for (const auto& f : functions) {
    std::string l = "(";
    for (int x = 0; x < dom.size(); ++x) {
      if (x) l += ",";
      l += cod.label(f[x]);
    }
    l += ")";
    labels.push_back(std::move(l));
  }
  BitMatrix m(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      bool le = true;
      for (int x = 0; x < dom.size() && le; ++x)
        if (!cod.leq(functions[a][x], functions[b][x])) le = false;
      if (le) m.set(a, b);
    }
  return MapSpace{FinitePreorder::validate(std::move(labels), std::move(m)),
                  std::move(functions)};
}

}  // namespace leff
