#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "leff/galois.hpp"
#include "leff/order.hpp"

namespace leff {

// The partition of a map's domain by p ~ q iff f(p ∨ x) = f(q ∨ x) for all x;
// a congruence of the join-semilattice structure. Each class carries its
// maximum, which equals the join of the class.
struct Congruence {
  PreorderPtr carrier;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_max;

  // p ↦ maximum of its class; a closure operator on the carrier.
  int max_closure(int p) const { return class_max[class_of[p]]; }
};
Congruence congruence_of(const MonotoneMap& f);

// The join-semilattice of congruence classes with the projection π, which
// commutes with finite joins (verified exhaustively at construction).
struct Quotient {
  FinitePoset poset;
  MonotoneMap pi;
};
Quotient quotient(const Congruence& c);

// Smallest join-closed subset of the codomain containing the image, with the
// join-preserving inclusion ι.
struct ImageSemilattice {
  FinitePoset poset;
  MonotoneMap iota;
  std::vector<int> codomain_index;  // sub-element -> codomain element
};
ImageSemilattice image_semilattice(const MonotoneMap& f);

// f = ι ∘ g ∘ π through the quotient and the image semilattice; g is the
// unique map making the square commute.
struct MapFactorization {
  Congruence congruence;
  Quotient q;
  ImageSemilattice image;
  MonotoneMap g;
};
MapFactorization factor(const MonotoneMap& f);

// For injective f: the factor g is a veil iff f reflects order.
bool injective_criterion(const MonotoneMap& f);

// For surjective f on a finite domain: g is a veil iff f preserves meets of
// class maxima (empty meet plus pairwise suffices).
bool surjective_criterion(const MonotoneMap& f);

// An upward-closed subset, stored by its antichain of minimal generators.
// The extent is materialized lazily and cached; containment queries reduce to
// generator domination.
class Filter {
 public:
  static Filter from_generators(PreorderPtr host, std::vector<int> generators);
  static Filter from_extent(PreorderPtr host, const IndexSet& extent);

  const FinitePreorder& host() const { return *host_; }
  const PreorderPtr& host_ptr() const { return host_; }
  const std::vector<int>& generators() const { return gens_; }
  bool contains(int p) const;
  const IndexSet& extent() const;
  int extent_size() const { return index_set_count(extent()); }
  std::string label() const;

  friend bool operator==(const Filter& a, const Filter& b) {
    return same_carrier(*a.host_, *b.host_) && a.gens_ == b.gens_;
  }

 private:
  Filter(PreorderPtr host, std::vector<int> gens)
      : host_(std::move(host)), gens_(std::move(gens)) {}

  PreorderPtr host_;
  std::vector<int> gens_;
  mutable std::optional<IndexSet> extent_;
};

Filter principal_filter(const PreorderPtr& host, int p);
Filter filter_intersection(const Filter& a, const Filter& b);
Filter filter_union(const Filter& a, const Filter& b);
// ⟨f(I)⟩: the filter generated by the image of I in the codomain.
Filter filter_image_closure(const MonotoneMap& f, const Filter& i);

// All filters of P under reverse inclusion: joins are intersections, meets
// are unions, and the lattice is distributive. Enumeration walks a linear
// extension top-down and is gated by the resulting filter count (antichain
// growth is what explodes, not |P| itself).
inline constexpr int kMaxFilterHostElements = 32;
struct FilterLattice {
  FinitePoset poset;
  std::vector<Filter> filters;
  std::vector<std::uint32_t> extent_masks;
  int index_of_extent(std::uint32_t mask) const;
};
FilterLattice filter_lattice(const PreorderPtr& p);

// J(f) between the filter lattices; always a veil, whatever f was.
struct LiftedVeil {
  FilterLattice domain;
  FilterLattice codomain;
  Veil veil;
};
LiftedVeil lift_map(const MonotoneMap& f);

// Point query for carriers too large to enumerate: J(f) applied to one
// filter, plus the minimum explaining filter of a phenome filter (V.2
// validated at that point only).
Filter lift_apply(const MonotoneMap& f, const Filter& i);
Filter lift_explanation(const MonotoneMap& f, const Filter& j);

// Evaluates f(p ∨ p′) ≠ f(p) ∨ f(p′) and its lifted counterpart
// J(f)(⟨p⟩ ∩ ⟨p′⟩) ≠ J(f)⟨p⟩ ∩ J(f)⟨p′⟩; the two must agree.
std::pair<bool, bool> lift_preserves_effects(const MonotoneMap& f, int p, int p_prime);

}  // namespace leff
