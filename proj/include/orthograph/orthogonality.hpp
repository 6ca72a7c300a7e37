#pragma once

// Birkhoff-James orthogonality x ⊥ y  (|x + λy| >= |x| for all complex λ),
// strong orthogonality a ⊥s b (|a + bc| >= |a| for all c in A) and the mutual
// relation that defines the orthograph's edges.
//
// Decision procedure for x ⊥ y: let M0 be the norm-attaining subspace of x (top
// eigenspace of x*x) with orthonormal basis V, and T = V* x* y V. Then x ⊥ y iff
// 0 lies in the numerical range W(T). Membership is tested through the support
// function θ ↦ λmax(Re(e^{iθ} T)); a witness vector v with |xv| = |x| and
// <xv, yv> = 0 is then built from boundary points of W(T). When no witness
// exists the convex function λ ↦ |x + λy| is minimized over the disk
// |λ| <= 2|x|/|y| that must contain every minimizer.
//
// Strong orthogonality reduces to the plain relation: a ⊥s b iff a ⊥ b b* a.

#include <utility>
#include <variant>

#include "orthograph/algebra.hpp"

namespace orthograph {

/// Unit vector v in C^{total_dim} attaining the norm of x with <xv, yv> ≈ 0.
struct WitnessVector {
  Vector vector;
  double attained_norm = 0.0;  ///< |x v|
  Complex inner = 0.0;         ///< (x v)* (y v)
};

/// λ with |x + λ y| = achieved.
struct MinimizingScalar {
  Complex lambda = 0.0;
  double achieved = 0.0;
};

using Certificate = std::variant<std::monostate, WitnessVector, MinimizingScalar>;

enum class Outcome { Orthogonal, NotOrthogonal, Indeterminate };

/// Margin conventions (relative units):
///  * vacuous direction (y = 0 or b b* a = 0): margin = 1;
///  * witness found: margin = 1 - r/τ_orth where r is the certified relative
///    norm deficit min_λ|x+λy| >= (1 - r)|x| implied by the witness;
///  * otherwise: margin = (achieved - |x|)/|x| from the λ-minimization.
/// |margin| <= 2τ_orth is the tie band.
struct OrthDecision {
  bool verdict = false;
  double margin = 0.0;
  Certificate certificate;

  bool indeterminate(const Tolerances& tol) const noexcept;
  Outcome outcome(const Tolerances& tol) const noexcept;
};

struct MutualDecision {
  OrthDecision forward;   ///< a ⊥s b
  OrthDecision backward;  ///< b ⊥s a

  bool adjacent() const noexcept { return forward.verdict && backward.verdict; }
  /// Not adjacent for sure, adjacent for sure, or within the tie band.
  Outcome outcome(const Tolerances& tol) const noexcept;
};

/// Evaluates |x + λ y| blockwise with the SIMD kernels. Reusable scratch.
class NormAlong {
 public:
  NormAlong(const Element& x, const Element& y);
  double operator()(Complex lambda);

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Complex>> x_, y_;
  std::vector<Complex> work_, scratch_;
};

/// Plain BJ orthogonality. Throws ZeroElement for x = 0, ShapeMismatch.
OrthDecision bj_orthogonal(const Element& x, const Element& y, const Tolerances& tol = {});

/// Strong BJ orthogonality a ⊥s b via a ⊥ b b* a.
OrthDecision strong_bj(const Element& a, const Element& b, const Tolerances& tol = {});

/// Both directions; throws ZeroElement when either side is zero.
MutualDecision mutual_strong(const Element& a, const Element& b, const Tolerances& tol = {});

/// rho(aa*) = |a|^2 and rho(bb*) = 0 within tol.orth (relative): a sufficient
/// certificate for a ⊥s b.
bool state_witness_check(const Element& a, const Element& b, const PureState& rho, const Tolerances& tol = {});

/// p a = p and p b = 0 within tol.orth for positive a, b of norm one: a
/// sufficient certificate for a ⊥s b, since |a + bc| >= |p(a + bc)| = |p|. Throws
/// NotPositive / NotNormalized.
bool projection_witness_check(const Projection& p, const Element& a, const Element& b,
                              const Tolerances& tol = {});

/// Global minimum of the convex function λ ↦ |x + λy| (nested golden-section
/// search over a box containing the disk |λ| <= 2|x|/|y|).
MinimizingScalar minimize_along(const Element& x, const Element& y, int iterations = 52);

/// Independent oracle: polar grid of grid_n x grid_n points on the disk of
/// radius 2|x|/|y| followed by `refine_steps` rounds of coordinate descent.
MinimizingScalar brute_force_min_lambda(const Element& x, const Element& y, int grid_n = 200,
                                        int refine_steps = 50);

/// Re-checks a decision's certificate against x and the direction y it was
/// computed for.
bool verify_certificate(const Element& x, const Element& y, const OrthDecision& d, const Tolerances& tol = {});

/// The direction b b* a that strong orthogonality a ⊥s b reduces to.
Element strong_direction(const Element& a, const Element& b);

}  // namespace orthograph
