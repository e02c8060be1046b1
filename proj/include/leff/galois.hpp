#pragma once

#include <cstdint>
#include <vector>

#include "leff/operators.hpp"
#include "leff/order.hpp"

namespace leff {

// An order-preserving map Φ : System → Phenome over finitely cocomplete
// carriers where every phenome has a unique minimum explaining system
// (axioms V.1/V.2). The left adjoint F is tabulated eagerly at validation,
// making adjunction queries O(1).
class Veil {
 public:
  // Throws NoMinimumExplanation (with the antichain of minimal explanations)
  // when V.2 fails, and carrier errors when either side is not a finitely
  // cocomplete poset.
  static Veil validate(MonotoneMap phi);

  const MonotoneMap& phi() const { return phi_; }
  const FinitePreorder& system() const { return phi_.domain(); }
  const FinitePreorder& phenome() const { return phi_.codomain(); }

  int apply(int s) const { return phi_(s); }
  int left_adjoint(int p) const { return adjoint_[p]; }
  const std::vector<int>& adjoint_table() const { return adjoint_; }

 private:
  Veil(MonotoneMap phi, std::vector<int> adjoint)
      : phi_(std::move(phi)), adjoint_(std::move(adjoint)) {}

  MonotoneMap phi_;
  std::vector<int> adjoint_;
};

// A pair of systems whose combined phenome exceeds the join of their separate
// phenomes: lhs = Φ(s ∨ s′), rhs = Φ(s) ∨ Φ(s′), with rhs ≤ lhs and rhs ≠ lhs.
struct EffectWitness {
  int s;
  int s_prime;
  int lhs;
  int rhs;
  friend bool operator==(const EffectWitness&, const EffectWitness&) = default;
};

enum class DetectMode { exhaustive, sampled };

struct DetectOptions {
  DetectMode mode = DetectMode::exhaustive;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t pair_budget = std::uint64_t{1} << 22;
};

// Witness pairs, deterministically ordered by (s, s_prime). An empty result
// in exhaustive mode certifies the veil sustains no generative effects.
std::vector<EffectWitness> detect_effects(const Veil& v, const DetectOptions& opts = {});

// Re-evaluates a claimed witness against the veil.
bool witness_holds(const Veil& v, const EffectWitness& w);

// F ∘ Φ on System (K.1–K.3) and Φ ∘ F on Phenome (C.1–C.3). Axiom failures
// here are internal errors: a validated veil cannot produce them.
KernelOperator derived_kernel(const Veil& v);
ClosureOperator derived_closure(const Veil& v);

// v2 after v1; the composite left adjoint is F1 ∘ F2.
Veil compose(const Veil& v2, const Veil& v1);

// Surjective-then-injective factorization through the image poset Q:
// iota ∘ pi = Φ pointwise, both components veils.
struct VeilFactorization {
  FinitePoset mid;
  std::vector<int> phenome_index;  // mid element -> phenome element
  Veil pi;
  Veil iota;
};
VeilFactorization factorize(const Veil& v);

// Meet-preservation route: on complete-lattice carriers, order-preserving +
// meet-preserving is equivalent to being a veil. Checks empty meet (top) and
// all pairwise meets; throws MeetNotPreserved with the witness subset.
Veil veil_by_meets(MonotoneMap phi);

// The adjoint F of a veil is itself a veil between the order-duals.
Veil dual_veil(const Veil& v);

// Stock constructions.

// Φ : (2^{A×B},⊆) → (2^A,⊆), R ↦ {a : (a,b) ∈ R for all b}. Left adjoint
// S ↦ S×B.
Veil forall_relation_veil(const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// Φ : (2^{A×B},⊇) → (2^A,⊇), R ↦ {a : (a,b) ∈ R for some b}; carriers are
// explicit order-duals, so joins are intersections.
Veil exists_relation_veil(const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// Behaviors over a product universum U = S×S' under reverse inclusion,
// projected to 2^S. Left adjoint p^{-1}(·).
Veil behavior_projection_veil(const std::vector<std::string>& s,
                              const std::vector<std::string>& s_prime);

// Same systems, phenome 2^S × 2^S'; conceals only the coupling between the
// two components. Left adjoint sends (X, Y) to the rectangle X×Y.
Veil interdependence_veil(const std::vector<std::string>& s,
                          const std::vector<std::string>& s_prime);

// Transitive relations (join = transitive closure of union) included into all
// relations (join = union); the derived closure is transitive closure.
Veil transitive_closure_veil(const std::vector<std::string>& ground);

// Helpers shared with the transitive-closure construction.
Mask relation_transitive_closure(Mask rel, int n);
bool relation_is_transitive(Mask rel, int n);

}  // namespace leff
