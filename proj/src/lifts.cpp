#include "leff/lifts.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace leff {

namespace {

void require_cocomplete_domain(const FinitePreorder& p, const char* what) {
  if (!is_finitely_cocomplete(p))
    throw validation_error("CarrierNotCocomplete",
                           std::string(what) + " needs a finitely cocomplete carrier");
}

std::vector<std::vector<int>> join_table(const FinitePreorder& p, const char* what) {
  std::vector<std::vector<int>> jt(p.size(), std::vector<int>(p.size()));
  for (int x = 0; x < p.size(); ++x)
    for (int y = x; y < p.size(); ++y) {
      auto j = join_any(p, x, y);
      LEFF_INTERNAL_CHECK(j.has_value(), std::string("join must exist in ") + what);
      jt[x][y] = jt[y][x] = *j;
    }
  return jt;
}

}  // namespace

Congruence congruence_of(const MonotoneMap& f) {
  const FinitePreorder& p = f.domain();
  require_cocomplete_domain(p, "congruence computation");
  const auto jt = join_table(p, "the congruence carrier");
  const int n = p.size();

  auto related = [&](int a, int b) {
    for (int x = 0; x < n; ++x)
      if (f(jt[a][x]) != f(jt[b][x])) return false;
    return true;
  };

  Congruence c;
  c.carrier = f.domain_ptr();
  c.class_of.assign(n, -1);
  for (int e = 0; e < n; ++e) {
    for (std::size_t k = 0; k < c.classes.size(); ++k)
      if (related(e, c.classes[k].front())) {
        c.class_of[e] = static_cast<int>(k);
        c.classes[k].push_back(e);
        break;
      }
    if (c.class_of[e] < 0) {
      c.class_of[e] = static_cast<int>(c.classes.size());
      c.classes.push_back({e});
    }
  }

  for (const auto& members : c.classes) {
    int acc = members.front();
    for (int m : members) acc = jt[acc][m];
    // The join of a class stays in the class (congruence), making it the
    // class maximum.
    LEFF_INTERNAL_CHECK(c.class_of[acc] == c.class_of[members.front()],
                        "the join of a congruence class must stay in the class");
    for (int m : members)
      LEFF_INTERNAL_CHECK(p.leq(m, acc), "class join must dominate every member");
    c.class_max.push_back(acc);
  }
  return c;
}

Quotient quotient(const Congruence& c) {
  const FinitePreorder& p = *c.carrier;
  const int k = static_cast<int>(c.classes.size());
  const auto jt = join_table(p, "the congruence carrier");

  std::vector<std::string> labels;
  labels.reserve(k);
  for (int i = 0; i < k; ++i) labels.push_back("[" + p.label(c.class_max[i]) + "]");
  BitMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (c.class_of[jt[c.class_max[i]][c.class_max[j]]] == j) m.set(i, j);
  auto quotient_poset = std::make_shared<FinitePoset>(
      FinitePoset::validate(std::move(labels), std::move(m)));

  MonotoneMap pi = MonotoneMap::validate(c.carrier, quotient_poset, c.class_of);
  for (int x = 0; x < p.size(); ++x)
    for (int y = x; y < p.size(); ++y) {
      auto jq = join_any(*quotient_poset, pi(x), pi(y));
      LEFF_INTERNAL_CHECK(jq.has_value() && *jq == pi(jt[x][y]),
                          "the quotient projection must commute with joins");
    }
  return Quotient{*quotient_poset, std::move(pi)};
}

ImageSemilattice image_semilattice(const MonotoneMap& f) {
  const FinitePreorder& cod = f.codomain();
  require_cocomplete_domain(cod, "image semilattice");

  std::set<int> elems(f.table().begin(), f.table().end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<int> snapshot(elems.begin(), elems.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        auto jo = join_any(cod, snapshot[i], snapshot[j]);
        LEFF_INTERNAL_CHECK(jo.has_value(), "codomain joins must exist");
        if (elems.insert(*jo).second) grew = true;
      }
  }
  std::vector<int> index(elems.begin(), elems.end());
  auto sub = std::make_shared<FinitePoset>(FinitePoset::induced(cod, index));
  MonotoneMap iota = MonotoneMap::validate(sub, f.codomain_ptr(), index);

  for (int x = 0; x < sub->size(); ++x)
    for (int y = x; y < sub->size(); ++y) {
      auto js = join_any(*sub, x, y);
      auto jc = join_any(cod, index[x], index[y]);
      LEFF_INTERNAL_CHECK(js.has_value() && jc.has_value() && index[*js] == *jc,
                          "the image inclusion must commute with joins");
    }
  return ImageSemilattice{*sub, std::move(iota), std::move(index)};
}

MapFactorization factor(const MonotoneMap& f) {
  Congruence c = congruence_of(f);
  Quotient q = quotient(c);
  ImageSemilattice img = image_semilattice(f);

  std::vector<int> to_sub(f.codomain().size(), -1);
  for (std::size_t i = 0; i < img.codomain_index.size(); ++i)
    to_sub[img.codomain_index[i]] = static_cast<int>(i);

  std::vector<int> g_table(c.classes.size());
  for (std::size_t k = 0; k < c.classes.size(); ++k)
    g_table[k] = to_sub[f(c.class_max[k])];
  MonotoneMap g = MonotoneMap::validate(q.pi.codomain_ptr(), img.iota.domain_ptr(),
                                        std::move(g_table));

  for (int p = 0; p < f.domain().size(); ++p)
    LEFF_INTERNAL_CHECK(img.codomain_index[g(q.pi(p))] == f(p),
                        "factorization must compose back to f");
  return MapFactorization{std::move(c), std::move(q), std::move(img), std::move(g)};
}

bool injective_criterion(const MonotoneMap& f) {
  std::vector<int> seen(f.codomain().size(), -1);
  for (int p = 0; p < f.domain().size(); ++p) {
    if (seen[f(p)] >= 0)
      throw validation_error("NotInjective",
                             "criterion applies to injective maps only; " +
                                 f.domain().label(seen[f(p)]) + " and " +
                                 f.domain().label(p) + " collide");
    seen[f(p)] = p;
  }
  for (int p = 0; p < f.domain().size(); ++p)
    for (int q = 0; q < f.domain().size(); ++q)
      if (f.codomain().leq(f(p), f(q)) && !f.domain().leq(p, q)) return false;
  return true;
}

bool surjective_criterion(const MonotoneMap& f) {
  const FinitePreorder& dom = f.domain();
  const FinitePreorder& cod = f.codomain();
  require_cocomplete_domain(dom, "surjective criterion");
  require_cocomplete_domain(cod, "surjective criterion");
  std::vector<bool> hit(cod.size(), false);
  for (int p = 0; p < dom.size(); ++p) hit[f(p)] = true;
  for (int q = 0; q < cod.size(); ++q)
    if (!hit[q])
      throw validation_error("NotSurjective", "criterion applies to surjective maps only; " +
                                                  cod.label(q) + " is never reached");

  // Finite cocomplete carriers are complete lattices, so tops and meets
  // exist. Pairwise meets over class maxima plus the empty meet settle every
  // finite collection: the maxima are meet-closed.
  const Congruence c = congruence_of(f);
  const int dom_top = *top(dom);
  const int cod_top = *top(cod);
  if (f(dom_top) != cod_top) return false;
  for (std::size_t i = 0; i < c.class_max.size(); ++i)
    for (std::size_t j = i + 1; j < c.class_max.size(); ++j) {
      const int a = c.class_max[i];
      const int b = c.class_max[j];
      auto md = meet_any(dom, a, b);
      auto mc = meet_any(cod, f(a), f(b));
      LEFF_INTERNAL_CHECK(md.has_value() && mc.has_value(),
                          "meets must exist in finite cocomplete carriers");
      if (f(*md) != *mc) return false;
    }
  return true;
}

Filter Filter::from_generators(PreorderPtr host, std::vector<int> generators) {
  const FinitePreorder& p = *host;
  for (int g : generators)
    if (g < 0 || g >= p.size())
      throw validation_error("SchemaError", "filter generator outside the host poset");
  // Canonical form: the minimal antichain.
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::vector<int> minimal;
  for (int g : generators) {
    bool dominated = false;
    for (int h : generators)
      if (h != g && p.leq(h, g)) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(g);
  }
  return Filter(std::move(host), std::move(minimal));
}

Filter Filter::from_extent(PreorderPtr host, const IndexSet& extent) {
  const FinitePreorder& p = *host;
  index_set_for_each(extent, [&](int x) {
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y) && !index_set_has(extent, y))
        throw validation_error("NotUpwardClosed",
                               "extent contains " + p.label(x) + " but not " + p.label(y));
  });
  return Filter(host, minimal_members(p, extent));
}

bool Filter::contains(int p) const {
  for (int g : gens_)
    if (host_->leq(g, p)) return true;
  return false;
}

const IndexSet& Filter::extent() const {
  if (!extent_) {
    IndexSet e = make_index_set(host_->size());
    for (int x = 0; x < host_->size(); ++x)
      if (contains(x)) index_set_add(e, x);
    extent_ = std::move(e);
  }
  return *extent_;
}

std::string Filter::label() const {
  std::string out = "⟨";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ",";
    out += host_->label(gens_[i]);
  }
  out += "⟩";
  return out;
}

Filter principal_filter(const PreorderPtr& host, int p) {
  return Filter::from_generators(host, {p});
}

namespace {

Filter filter_from_upset(const PreorderPtr& host, const IndexSet& extent) {
  // Intersections and unions of up-sets are up-sets; skip revalidation.
  return Filter::from_generators(host, minimal_members(*host, extent));
}

}  // namespace

Filter filter_intersection(const Filter& a, const Filter& b) {
  LEFF_INTERNAL_CHECK(same_carrier(a.host(), b.host()), "filters must share a host");
  IndexSet e = a.extent();
  const IndexSet& eb = b.extent();
  for (std::size_t w = 0; w < e.size(); ++w) e[w] &= eb[w];
  return filter_from_upset(a.host_ptr(), e);
}

Filter filter_union(const Filter& a, const Filter& b) {
  LEFF_INTERNAL_CHECK(same_carrier(a.host(), b.host()), "filters must share a host");
  IndexSet e = a.extent();
  const IndexSet& eb = b.extent();
  for (std::size_t w = 0; w < e.size(); ++w) e[w] |= eb[w];
  return filter_from_upset(a.host_ptr(), e);
}

Filter filter_image_closure(const MonotoneMap& f, const Filter& i) {
  LEFF_INTERNAL_CHECK(same_carrier(f.domain(), i.host()),
                      "filter image needs the map's domain as host");
  std::vector<int> gens;
  gens.reserve(i.generators().size());
  for (int g : i.generators()) gens.push_back(f(g));
  return Filter::from_generators(f.codomain_ptr(), std::move(gens));
}

FilterLattice filter_lattice(const PreorderPtr& p) {
  const FinitePreorder& host = *p;
  if (host.size() > kMaxFilterHostElements)
    throw validation_error("PosetTooLarge",
                           "filter lattice hosts are gated at " +
                               std::to_string(kMaxFilterHostElements) + " elements");
  const int n = host.size();
  std::vector<std::uint32_t> up(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (host.leq(x, y)) up[x] |= std::uint32_t{1} << y;

  // Elements in a descending linear extension; an element may join the up-set
  // only when everything above it already has. Every branch of the walk is a
  // filter, so the work is proportional to the output.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return __builtin_popcount(up[a]) < __builtin_popcount(up[b]);
  });

  std::vector<std::uint32_t> extents;
  auto walk = [&](auto&& self, int pos, std::uint32_t mask) -> void {
    if (pos == n) {
      if (static_cast<int>(extents.size()) >= kMaxExplicitElements)
        throw validation_error("PosetTooLarge",
                               "filter-lattice enumeration is gated at " +
                                   std::to_string(kMaxExplicitElements) + " filters");
      extents.push_back(mask);
      return;
    }
    const int x = order[pos];
    self(self, pos + 1, mask);
    if ((up[x] & ~mask) == (std::uint32_t{1} << x))
      self(self, pos + 1, mask | (std::uint32_t{1} << x));
  };
  walk(walk, 0, 0);
  std::sort(extents.begin(), extents.end());

  std::vector<Filter> filters;
  std::vector<std::string> labels;
  filters.reserve(extents.size());
  for (std::uint32_t mask : extents) {
    IndexSet e = make_index_set(n);
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1u) index_set_add(e, x);
    filters.push_back(filter_from_upset(p, e));
    labels.push_back(filters.back().label());
  }

  const int k = static_cast<int>(extents.size());
  BitMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if ((extents[j] & ~extents[i]) == 0) m.set(i, j);  // reverse inclusion
  return FilterLattice{FinitePoset::validate(std::move(labels), std::move(m)),
                       std::move(filters), std::move(extents)};
}

int FilterLattice::index_of_extent(std::uint32_t mask) const {
  auto it = std::lower_bound(extent_masks.begin(), extent_masks.end(), mask);
  if (it == extent_masks.end() || *it != mask) return -1;
  return static_cast<int>(it - extent_masks.begin());
}

namespace {

std::uint32_t small_extent_mask(const Filter& f) {
  std::uint32_t mask = 0;
  index_set_for_each(f.extent(), [&](int x) { mask |= std::uint32_t{1} << x; });
  return mask;
}

}  // namespace

LiftedVeil lift_map(const MonotoneMap& f) {
  FilterLattice dom = filter_lattice(f.domain_ptr());
  FilterLattice cod = filter_lattice(f.codomain_ptr());
  auto dom_poset = std::make_shared<FinitePoset>(dom.poset);
  auto cod_poset = std::make_shared<FinitePoset>(cod.poset);

  std::vector<int> table(dom.filters.size());
  for (std::size_t i = 0; i < dom.filters.size(); ++i) {
    const Filter image = filter_image_closure(f, dom.filters[i]);
    const int idx = cod.index_of_extent(small_extent_mask(image));
    LEFF_INTERNAL_CHECK(idx >= 0, "image closure of a filter must be a filter");
    table[i] = idx;
  }
  Veil v = Veil::validate(MonotoneMap::validate(dom_poset, cod_poset, std::move(table)));
  return LiftedVeil{std::move(dom), std::move(cod), std::move(v)};
}

Filter lift_apply(const MonotoneMap& f, const Filter& i) {
  return filter_image_closure(f, i);
}

Filter lift_explanation(const MonotoneMap& f, const Filter& j) {
  LEFF_INTERNAL_CHECK(same_carrier(f.codomain(), j.host()),
                      "explanation query needs the map's codomain as host");
  std::vector<int> candidates;
  for (int p = 0; p < f.domain().size(); ++p) {
    // J ⊇ ⟨f(p)⟩ iff f(p) ∈ J.
    if (j.contains(f(p))) candidates.push_back(p);
  }
  Filter explanation = Filter::from_generators(f.domain_ptr(), std::move(candidates));
  // V.2 at this phenome filter: the candidate explains j and is contained in
  // (i.e. above, under ⊇) every explanation.
  const Filter image = filter_image_closure(f, explanation);
  index_set_for_each(image.extent(), [&](int q) {
    LEFF_INTERNAL_CHECK(j.contains(q), "lifted explanation must explain the phenome filter");
  });
  return explanation;
}

std::pair<bool, bool> lift_preserves_effects(const MonotoneMap& f, int p, int p_prime) {
  const FinitePreorder& dom = f.domain();
  const FinitePreorder& cod = f.codomain();
  require_cocomplete_domain(dom, "effect preservation");
  require_cocomplete_domain(cod, "effect preservation");

  auto jd = join_any(dom, p, p_prime);
  auto jc = join_any(cod, f(p), f(p_prime));
  const bool base_effect = f(*jd) != *jc;

  const Filter fp = principal_filter(f.domain_ptr(), p);
  const Filter fp2 = principal_filter(f.domain_ptr(), p_prime);
  const Filter lhs = filter_image_closure(f, filter_intersection(fp, fp2));
  const Filter rhs = filter_intersection(filter_image_closure(f, fp),
                                         filter_image_closure(f, fp2));
  const bool lifted_effect = !(lhs == rhs);

  LEFF_INTERNAL_CHECK(base_effect == lifted_effect,
                      "the filter lift must preserve effect witnesses exactly");
  return {base_effect, lifted_effect};
}

}  // namespace leff
