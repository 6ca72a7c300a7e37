#pragma once

// Elements of finite-dimensional C*-algebras A = M_{n_1}(C) + ... + M_{n_m}(C)
// and the spectral machinery built on blockwise Hermitian eigendecompositions.
//
// In finite dimensions the enveloping von Neumann algebra coincides with A, so
// every projection is simultaneously open, closed and compact; the functions
// here therefore work with projections living in A itself.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orthograph/error.hpp"
#include "orthograph/tolerances.hpp"

namespace orthograph {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered block sizes n_1, ..., n_m.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<std::size_t> blocks);
  AlgebraShape(std::initializer_list<std::size_t> blocks)
      : AlgebraShape(std::vector<std::size_t>(blocks)) {}

  std::span<const std::size_t> blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t block_dim(std::size_t i) const { return blocks_.at(i); }
  std::size_t total_dim() const noexcept { return total_; }
  std::size_t max_block_dim() const noexcept;
  /// Row/column offset of block i inside the assembled block-diagonal matrix.
  std::size_t offset(std::size_t i) const;

  /// True exactly for M_1, M_1 + M_1 and M_2.
  bool is_small() const noexcept;

  /// Shape of blocks [first, first + count).
  AlgebraShape sub_shape(std::size_t first, std::size_t count) const;

  /// "M2+M3" style label.
  std::string to_string() const;

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<std::size_t> blocks_;
  std::size_t total_ = 0;
};

/// A block-diagonal tuple of square complex matrices. Immutable value type.
class Element {
 public:
  /// Validates block count, block dimensions and finiteness (InvalidElement).
  Element(AlgebraShape shape, std::vector<Matrix> blocks);

  static Element zero(const AlgebraShape& shape);
  static Element identity(const AlgebraShape& shape);
  /// Single-block convenience: an element of M_n.
  static Element from_matrix(const Matrix& m);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }
  std::span<const Matrix> blocks() const noexcept { return blocks_; }

  /// The assembled total_dim x total_dim block-diagonal matrix.
  Matrix assembled() const;
  bool is_zero() const noexcept;

  Element adjoint() const;

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(Complex s, const Element& a);
  friend Element operator*(const Element& a, Complex s) { return s * a; }
  friend Element operator*(double s, const Element& a) { return Complex(s, 0.0) * a; }

  /// Exact entrywise equality (same shape, same entries).
  friend bool operator==(const Element& a, const Element& b);

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

/// A Hermitian idempotent element together with its per-block ranks.
class Projection {
 public:
  /// Validates p = p* and p^2 = p within tol.proj (NotProjection otherwise).
  static Projection from_element(const Element& p, const Tolerances& tol = {});
  /// Rank-1 projection x x* placed in `block`; x is normalized here.
  static Projection rank_one(const AlgebraShape& shape, std::size_t block, const Vector& x);
  /// Orthogonal projection onto the span of orthonormal columns `basis`, in `block`.
  static Projection onto_span(const AlgebraShape& shape, std::size_t block, const Matrix& basis);
  static Projection zero(const AlgebraShape& shape);

  const Element& element() const noexcept { return element_; }
  std::span<const std::size_t> block_ranks() const noexcept { return ranks_; }
  std::size_t rank() const noexcept;
  bool minimal() const noexcept { return rank() == 1; }
  /// For a minimal projection: the block holding it and a unit support vector.
  std::pair<std::size_t, Vector> support_vector() const;

 private:
  Projection(Element e, std::vector<std::size_t> ranks)
      : element_(std::move(e)), ranks_(std::move(ranks)) {}

  Element element_;
  std::vector<std::size_t> ranks_;
};

/// A vector state of one summand: rho(a) = <a_block v, v>.
class PureState {
 public:
  /// `block` is 0-based; the vector must be a unit vector within tol.vec.
  PureState(AlgebraShape shape, std::size_t block, Vector vector, const Tolerances& tol = {});

  const AlgebraShape& shape() const noexcept { return shape_; }
  std::size_t block() const noexcept { return block_; }
  const Vector& vector() const noexcept { return vector_; }

  Complex operator()(const Element& a) const;

 private:
  AlgebraShape shape_;
  std::size_t block_;
  Vector vector_;
};

void require_same_shape(const Element& a, const Element& b);

/// Operator norm: max over blocks of the largest singular value.
double norm(const Element& a);

/// |a*| = (a a*)^{1/2}, blockwise.
Element abs_star(const Element& a);

/// Positive square root of a positive semidefinite element (negative
/// eigenvalues from round-off are clamped to zero).
Element sqrt_psd(const Element& a);

bool is_hermitian(const Element& a, double tol);
/// Hermitian within tol.proj*max(1,|a|) and spectrum >= -tol.proj*max(1,|a|).
bool is_positive(const Element& a, const Tolerances& tol = {});

/// Smallest eigenvalue of a a* over all blocks exceeds tol.ker * |a|^2.
/// Throws ZeroElement for a = 0.
bool is_right_invertible(const Element& a, const Tolerances& tol = {});

/// Projection onto the eigenvectors of a positive a with eigenvalue <= tol.ker*|a|.
Projection kernel_projection(const Element& a, const Tolerances& tol = {});

/// Canonical unit vector in the span of the orthonormal columns of `basis`:
/// the normalized projection of the first canonical basis vector that the span
/// does not annihilate. Its leading nonzero coordinate is real and positive.
Vector canonical_unit_vector(const Matrix& basis);

/// Orthonormal basis (columns) of the eigenspace of a Hermitian matrix for
/// eigenvalues selected by `keep(eigenvalue)`.
template <class Pred>
Matrix eigenspace(const Matrix& hermitian, Pred keep);

/// Rank-1 p = x x* with x a top eigenvector of the positive a (deterministic
/// tie-break via canonical_unit_vector), so that a p = |a| p and p <= a/|a|.
Projection top_minimal_projection(const Element& a, const Tolerances& tol = {});

/// The minimal projection v v* corresponding to a vector state.
Projection minimal_projection_from_state(const PureState& rho);

/// Range projection of p + q, i.e. the join p v q.
Projection join_projections(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// Places `a` at block position `position` of `target` (zeros elsewhere).
Element embed(const Element& a, std::size_t position, const AlgebraShape& target);
/// Blocks [position, position + count) of c as an element of the sub-shape.
Element extract(const Element& c, std::size_t position, std::size_t count = 1);
/// (a, b) with a in the first `split` blocks and b in the rest.
std::pair<Element, Element> split(const Element& c, std::size_t split);
Element direct_sum(const Element& a, const Element& b);

/// Hilbert-Schmidt pairing tr(b* a) on assembled matrices.
Complex hs_inner(const Element& a, const Element& b);

/// True iff |a - lambda b| <= tol.orth * |a| for lambda = <a,b>_HS / <b,b>_HS.
bool projective_equal(const Element& a, const Element& b, const Tolerances& tol = {});

// ---------------------------------------------------------------------------

template <class Pred>
Matrix eigenspace(const Matrix& hermitian, Pred keep) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (keep(es.eigenvalues()(i))) cols.push_back(i);
  }
  Matrix basis(hermitian.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cols[k]);
  }
  return basis;
}

}  // namespace orthograph
