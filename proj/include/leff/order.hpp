#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leff/bitmatrix.hpp"
#include "leff/errors.hpp"

namespace leff {

// Hard caps. Explicit relations are stored densely; powerset carriers are
// kept implicit (element index == subset bit mask) so only the mask width is
// bounded.
inline constexpr int kMaxExplicitElements = 4096;
inline constexpr int kMaxPowersetWidth = 20;

using Mask = std::uint32_t;

// "∅" or "{A,B}" with labels in ground order.
std::string subset_label(Mask m, const std::vector<std::string>& ground);

class FinitePreorder;
class FinitePoset;
using PreorderPtr = std::shared_ptr<const FinitePreorder>;
using PosetPtr = std::shared_ptr<const FinitePoset>;

// A finite set with a validated reflexive-transitive relation. Immutable
// after construction. Two storage forms share one interface: an explicit
// dense relation over labeled elements, or an implicit powerset where
// element i stands for the subset with bit mask i.
class FinitePreorder {
 public:
  // Checks reflexivity and transitivity, listing every violated instance.
  static FinitePreorder validate(std::vector<std::string> labels, BitMatrix leq);

  // Ingestion path for generating pairs: reflexive-transitive closure first,
  // then validation (which then cannot fail).
  static FinitePreorder from_generators(std::vector<std::string> labels,
                                        const std::vector<std::pair<int, int>>& pairs);

  // Implicit powerset of a ground set, ordered by inclusion.
  static FinitePreorder powerset(std::vector<std::string> ground);

  int size() const { return size_; }

  bool leq(int x, int y) const {
    if (is_powerset()) return (static_cast<Mask>(x) & ~static_cast<Mask>(y)) == 0;
    return leq_.get(x, y);
  }
  bool equivalent(int x, int y) const { return leq(x, y) && leq(y, x); }
  bool strictly_less(int x, int y) const { return leq(x, y) && !leq(y, x); }

  bool is_antisymmetric() const { return antisymmetric_; }

  bool is_powerset() const { return powerset_width_ >= 0; }
  int powerset_width() const { return powerset_width_; }
  const std::vector<std::string>& ground() const { return ground_; }

  std::string label(int x) const;
  std::vector<std::string> all_labels() const;

  // Dense-relation rows; only valid for explicit storage.
  const std::uint64_t* up_row(int x) const { return leq_.row(x); }
  const std::uint64_t* down_row(int x) const { return geq_.row(x); }
  int row_words() const { return leq_.words_per_row(); }

  friend bool operator==(const FinitePreorder& a, const FinitePreorder& b);

 protected:
  FinitePreorder() = default;

  int size_ = 0;
  int powerset_width_ = -1;
  std::vector<std::string> labels_;  // explicit storage only
  std::vector<std::string> ground_;  // powerset storage only
  BitMatrix leq_;
  BitMatrix geq_;  // transpose, for meet scans
  bool antisymmetric_ = false;
};

// Same data with validated antisymmetry.
class FinitePoset : public FinitePreorder {
 public:
  static FinitePoset validate(std::vector<std::string> labels, BitMatrix leq);
  // Rejects preorders with genuine cycles.
  static FinitePoset require(FinitePreorder p);
  static FinitePoset powerset(std::vector<std::string> ground);
  static FinitePoset chain(int n);
  // Order-dual, materialized as an explicit relation.
  static FinitePoset dual_of(const FinitePreorder& p);
  // Sub-poset on the given host elements (host labels kept). Element i of the
  // result is host element `elements[i]`.
  static FinitePoset induced(const FinitePreorder& host, const std::vector<int>& elements);
  // Componentwise order on pairs; index = i * |b| + j, label "i×j".
  static FinitePoset product(const FinitePoset& a, const FinitePoset& b);

 private:
  explicit FinitePoset(FinitePreorder base) : FinitePreorder(std::move(base)) {}
};

// Subsets of element indices as word-packed bitsets.
using IndexSet = std::vector<std::uint64_t>;
IndexSet make_index_set(int n);
void index_set_add(IndexSet& s, int i);
bool index_set_has(const IndexSet& s, int i);
int index_set_count(const IndexSet& s);
// Calls fn(i) for every member, ascending.
template <typename Fn>
void index_set_for_each(const IndexSet& s, Fn&& fn) {
  for (std::size_t w = 0; w < s.size(); ++w) {
    std::uint64_t bits = s[w];
    while (bits) {
      const int b = __builtin_ctzll(bits);
      fn(static_cast<int>(w * 64 + b));
      bits &= bits - 1;
    }
  }
}

// Unique minimum of a member set; nullopt for the empty set, several minimal
// members, or an equivalence class of minima (preorders).
std::optional<int> find_minimum(const FinitePreorder& p, const IndexSet& members);
std::optional<int> find_maximum(const FinitePreorder& p, const IndexSet& members);
std::vector<int> minimal_members(const FinitePreorder& p, const IndexSet& members);
std::vector<int> maximal_members(const FinitePreorder& p, const IndexSet& members);

// Least upper / greatest lower bound probes that tolerate preorders (used by
// cocompleteness checks); absence is a value.
std::optional<int> join_any(const FinitePreorder& p, int x, int y);
std::optional<int> meet_any(const FinitePreorder& p, int x, int y);

// Contract surface: these require antisymmetry and throw NotAPoset otherwise.
std::optional<int> join(const FinitePreorder& p, int x, int y);
std::optional<int> meet(const FinitePreorder& p, int x, int y);

std::optional<int> bottom(const FinitePreorder& p);
std::optional<int> top(const FinitePreorder& p);

// Bottom exists and every pair has a join. When true, antisymmetry is
// asserted (it is forced: least upper bounds are unique by definition).
bool is_finitely_cocomplete(const FinitePreorder& p);
bool is_finitely_complete(const FinitePreorder& p);
// Finite case of "admits arbitrary joins and meets".
bool is_complete_lattice(const FinitePreorder& p);

// Pairs (x, y) with x < y and nothing strictly between.
std::vector<std::pair<int, int>> hasse_cover(const FinitePoset& p);

// Longest chain measured in cover steps; the iteration bound for operator
// joins.
int poset_height(const FinitePoset& p);

// An order-preserving map between validated carriers.
class MonotoneMap {
 public:
  static MonotoneMap validate(PreorderPtr domain, PreorderPtr codomain,
                              std::vector<int> assignment);

  const FinitePreorder& domain() const { return *dom_; }
  const FinitePreorder& codomain() const { return *cod_; }
  const PreorderPtr& domain_ptr() const { return dom_; }
  const PreorderPtr& codomain_ptr() const { return cod_; }

  int operator()(int x) const { return map_[x]; }
  const std::vector<int>& table() const { return map_; }

 private:
  MonotoneMap(PreorderPtr dom, PreorderPtr cod, std::vector<int> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {}

  PreorderPtr dom_;
  PreorderPtr cod_;
  std::vector<int> map_;
};

// Structural carrier identity: same shared object or same labeled relation.
bool same_carrier(const FinitePreorder& a, const FinitePreorder& b);
// Pointwise equality over a shared domain.
bool extensionally_equal(const MonotoneMap& f, const MonotoneMap& g);
// g after f; throws CarrierMismatch unless cod(f) = dom(g).
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

// All order-preserving maps domain -> codomain under the pointwise order.
// functions[e] is the assignment table of element e.
struct MapSpace {
  FinitePreorder space;
  std::vector<std::vector<int>> functions;
};
MapSpace map_space(const PreorderPtr& domain, const PreorderPtr& codomain);

}  // namespace leff
