#include "orthograph/algebra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orthograph/kernels.hpp"

namespace orthograph {
namespace {

// Smallest |P e_j| accepted as "nonzero" by the canonical tie-break.
constexpr double kCanonicalThreshold = 1e-6;

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

std::span<const Complex> entries(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

template <class F>
Element blockwise(const Element& a, F f) {
  std::vector<Matrix> out;
  out.reserve(a.blocks().size());
  for (const Matrix& m : a.blocks()) out.push_back(f(m));
  return Element(a.shape(), std::move(out));
}

template <class F>
Element blockwise(const Element& a, const Element& b, F f) {
  require_same_shape(a, b);
  std::vector<Matrix> out;
  out.reserve(a.blocks().size());
  for (std::size_t i = 0; i < a.blocks().size(); ++i) out.push_back(f(a.block(i), b.block(i)));
  return Element(a.shape(), std::move(out));
}

double max_block_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

// --- AlgebraShape -----------------------------------------------------------

AlgebraShape::AlgebraShape(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::InvalidElement, "shape needs at least one block");
  for (std::size_t n : blocks_) {
    if (n == 0) throw Error(ErrorKind::InvalidElement, "block dimensions must be positive");
  }
  total_ = std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

std::size_t AlgebraShape::max_block_dim() const noexcept {
  return *std::max_element(blocks_.begin(), blocks_.end());
}

std::size_t AlgebraShape::offset(std::size_t i) const {
  if (i > blocks_.size()) throw Error(ErrorKind::PositionOutOfRange, "block index");
  return std::accumulate(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(i), std::size_t{0});
}

bool AlgebraShape::is_small() const noexcept {
  if (blocks_.size() == 1) return blocks_[0] <= 2;
  return blocks_.size() == 2 && blocks_[0] == 1 && blocks_[1] == 1;
}

AlgebraShape AlgebraShape::sub_shape(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > blocks_.size()) {
    throw Error(ErrorKind::PositionOutOfRange, "sub-shape outside " + to_string());
  }
  return AlgebraShape(std::vector<std::size_t>(blocks_.begin() + static_cast<std::ptrdiff_t>(first),
                                               blocks_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

std::string AlgebraShape::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += '+';
    s += 'M' + std::to_string(blocks_[i]);
  }
  return s;
}

// --- Element ----------------------------------------------------------------

Element::Element(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.block_count()) {
    throw Error(ErrorKind::ShapeMismatch, "block count does not match shape " + shape_.to_string());
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto n = static_cast<Eigen::Index>(shape_.block_dim(i));
    if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, "block " + std::to_string(i) + " has wrong dimension");
    }
    if (!blocks_[i].allFinite()) throw Error(ErrorKind::InvalidElement, "non-finite entry");
  }
}

Element Element::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (std::size_t n : shape.blocks()) blocks.push_back(Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  return Element(shape, std::move(blocks));
}

Element Element::identity(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (std::size_t n : shape.blocks()) blocks.push_back(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  return Element(shape, std::move(blocks));
}

Element Element::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix must be square");
  return Element(AlgebraShape{static_cast<std::size_t>(m.rows())}, {m});
}

Matrix Element::assembled() const {
  const auto n = static_cast<Eigen::Index>(shape_.total_dim());
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const Matrix& b : blocks_) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

bool Element::is_zero() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Matrix& m) { return m.isZero(0.0); });
}

Element Element::adjoint() const {
  return blockwise(*this, [](const Matrix& m) -> Matrix { return m.adjoint(); });
}

Element operator+(const Element& a, const Element& b) {
  return blockwise(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

Element operator-(const Element& a, const Element& b) {
  return blockwise(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

Element operator*(const Element& a, const Element& b) {
  return blockwise(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

Element operator*(Complex s, const Element& a) {
  return blockwise(a, [s](const Matrix& x) -> Matrix { return s * x; });
}

bool operator==(const Element& a, const Element& b) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    if (a.block(i) != b.block(i)) return false;
  }
  return true;
}

void require_same_shape(const Element& a, const Element& b) {
  if (a.shape() != b.shape()) {
    throw Error(ErrorKind::ShapeMismatch, a.shape().to_string() + " vs " + b.shape().to_string());
  }
}

// --- Projection -------------------------------------------------------------

Projection Projection::from_element(const Element& p, const Tolerances& tol) {
  if (norm(p - p.adjoint()) > tol.proj) throw Error(ErrorKind::NotProjection, "not Hermitian");
  if (norm(p * p - p) > tol.proj) throw Error(ErrorKind::NotProjection, "not idempotent");
  std::vector<std::size_t> ranks;
  for (const Matrix& b : p.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(b), Eigen::EigenvaluesOnly);
    ranks.push_back(static_cast<std::size_t>((es.eigenvalues().array() > 0.5).count()));
  }
  return Projection(p, std::move(ranks));
}

Projection Projection::rank_one(const AlgebraShape& shape, std::size_t block, const Vector& x) {
  if (block >= shape.block_count()) throw Error(ErrorKind::PositionOutOfRange, "block index");
  if (x.size() != static_cast<Eigen::Index>(shape.block_dim(block))) {
    throw Error(ErrorKind::ShapeMismatch, "vector length does not match block");
  }
  const double len = x.norm();
  if (len == 0.0) throw Error(ErrorKind::ZeroElement, "zero support vector");
  const Vector u = x / len;
  Matrix basis = u;
  return onto_span(shape, block, basis);
}

Projection Projection::onto_span(const AlgebraShape& shape, std::size_t block, const Matrix& basis) {
  Element z = Element::zero(shape);
  std::vector<Matrix> blocks(z.blocks().begin(), z.blocks().end());
  blocks.at(block) = basis * basis.adjoint();
  std::vector<std::size_t> ranks(shape.block_count(), 0);
  ranks[block] = static_cast<std::size_t>(basis.cols());
  return Projection(Element(shape, std::move(blocks)), std::move(ranks));
}

Projection Projection::zero(const AlgebraShape& shape) {
  return Projection(Element::zero(shape), std::vector<std::size_t>(shape.block_count(), 0));
}

std::size_t Projection::rank() const noexcept {
  return std::accumulate(ranks_.begin(), ranks_.end(), std::size_t{0});
}

std::pair<std::size_t, Vector> Projection::support_vector() const {
  if (!minimal()) throw Error(ErrorKind::NotMinimal, "projection rank " + std::to_string(rank()));
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i] == 1) {
      const Matrix basis = eigenspace(hermitize(element_.block(i)), [](double ev) { return ev > 0.5; });
      return {i, basis.col(0)};
    }
  }
  throw Error(ErrorKind::NotMinimal, "no supporting block");
}

// --- PureState --------------------------------------------------------------

PureState::PureState(AlgebraShape shape, std::size_t block, Vector vector, const Tolerances& tol)
    : shape_(std::move(shape)), block_(block), vector_(std::move(vector)) {
  if (block_ >= shape_.block_count()) throw Error(ErrorKind::PositionOutOfRange, "state block index");
  if (vector_.size() != static_cast<Eigen::Index>(shape_.block_dim(block_))) {
    throw Error(ErrorKind::ShapeMismatch, "state vector length does not match block");
  }
  if (std::abs(vector_.norm() - 1.0) > tol.vec) throw Error(ErrorKind::NotNormalized, "state vector is not a unit vector");
}

Complex PureState::operator()(const Element& a) const {
  if (a.shape() != shape_) throw Error(ErrorKind::ShapeMismatch, "state evaluated on foreign shape");
  return vector_.dot(a.block(block_) * vector_);
}

// --- spectral operations ----------------------------------------------------

double norm(const Element& a) {
  double n = 0.0;
  for (const Matrix& m : a.blocks()) n = std::max(n, max_block_norm(m));
  return n;
}

Element sqrt_psd(const Element& a) {
  // Eigenvalues at round-off level are treated as exact zeros; otherwise the
  // square root would inflate them to ~1e-8 and blur the kernel.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                       static_cast<double>(a.shape().max_block_dim()) * norm(a);
  return blockwise(a, [floor](const Matrix& m) -> Matrix {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    const Eigen::VectorXd roots =
        es.eigenvalues().unaryExpr([floor](double ev) { return ev > floor ? std::sqrt(ev) : 0.0; });
    return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  });
}

Element abs_star(const Element& a) { return sqrt_psd(a * a.adjoint()); }

bool is_hermitian(const Element& a, double tol) { return norm(a - a.adjoint()) <= tol; }

bool is_positive(const Element& a, const Tolerances& tol) {
  const double scale = std::max(1.0, norm(a));
  if (!is_hermitian(a, tol.proj * scale)) return false;
  for (const Matrix& m : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol.proj * scale) return false;
  }
  return true;
}

bool is_right_invertible(const Element& a, const Tolerances& tol) {
  const double n = norm(a);
  if (n == 0.0) throw Error(ErrorKind::ZeroElement, "right invertibility of zero");
  const double threshold = tol.ker * n * n;
  for (const Matrix& m : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m * m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= threshold) return false;
  }
  return true;
}

Projection kernel_projection(const Element& a, const Tolerances& tol) {
  if (!is_positive(a, tol)) throw Error(ErrorKind::NotPositive, "kernel projection needs a positive element");
  const double threshold = tol.ker * norm(a);
  std::vector<Matrix> blocks;
  for (const Matrix& m : a.blocks()) {
    const Matrix basis = eigenspace(hermitize(m), [threshold](double ev) { return ev <= threshold; });
    blocks.push_back(basis * basis.adjoint());
  }
  return Projection::from_element(Element(a.shape(), std::move(blocks)));
}

Vector canonical_unit_vector(const Matrix& basis) {
  if (basis.cols() == 0) throw Error(ErrorKind::ZeroElement, "empty subspace has no unit vector");
  for (Eigen::Index j = 0; j < basis.rows(); ++j) {
    // P e_j = B (row j of B)^*, with |P e_j| = |row j|.
    const double len = basis.row(j).norm();
    if (len > kCanonicalThreshold) {
      Vector v = basis * basis.row(j).adjoint();
      return v / v.norm();
    }
  }
  throw Error(ErrorKind::ZeroElement, "subspace basis is numerically zero");
}

Projection top_minimal_projection(const Element& a, const Tolerances& tol) {
  if (!is_positive(a, tol)) throw Error(ErrorKind::NotPositive, "top projection needs a positive element");
  const double n = norm(a);
  if (n == 0.0) throw Error(ErrorKind::ZeroElement, "top projection of zero");
  const double cutoff = n - tol.eig * n;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    const Matrix basis = eigenspace(hermitize(a.block(i)), [cutoff](double ev) { return ev >= cutoff; });
    if (basis.cols() > 0) return Projection::rank_one(a.shape(), i, canonical_unit_vector(basis));
  }
  throw Error(ErrorKind::ZeroElement, "no top eigenvector found");
}

Projection minimal_projection_from_state(const PureState& rho) {
  return Projection::rank_one(rho.shape(), rho.block(), rho.vector());
}

Projection join_projections(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.element(), q.element());
  const Element sum = p.element() + q.element();
  // Range of [p q] from its SVD: the singular values are square roots of the
  // eigenvalues of p + q, so nearly parallel ranges stay well resolved.
  const double threshold = tol.ker * std::sqrt(std::max(1.0, norm(sum)));
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < sum.shape().block_count(); ++i) {
    const Matrix& pb = p.element().block(i);
    Matrix stacked(pb.rows(), 2 * pb.cols());
    stacked << pb, q.element().block(i);
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > threshold) ++r;
    const Matrix basis = svd.matrixU().leftCols(r);
    blocks.push_back(basis * basis.adjoint());
  }
  return Projection::from_element(Element(sum.shape(), std::move(blocks)), tol);
}

// --- direct sums ------------------------------------------------------------

Element embed(const Element& a, std::size_t position, const AlgebraShape& target) {
  const std::size_t m = a.shape().block_count();
  if (position + m > target.block_count()) throw Error(ErrorKind::PositionOutOfRange, "embedding outside target shape");
  if (target.sub_shape(position, m) != a.shape()) {
    throw Error(ErrorKind::ShapeMismatch, "cannot place " + a.shape().to_string() + " in " + target.to_string());
  }
  Element z = Element::zero(target);
  std::vector<Matrix> blocks(z.blocks().begin(), z.blocks().end());
  for (std::size_t i = 0; i < m; ++i) blocks[position + i] = a.block(i);
  return Element(target, std::move(blocks));
}

Element extract(const Element& c, std::size_t position, std::size_t count) {
  const AlgebraShape sub = c.shape().sub_shape(position, count);
  std::vector<Matrix> blocks(c.blocks().begin() + static_cast<std::ptrdiff_t>(position),
                             c.blocks().begin() + static_cast<std::ptrdiff_t>(position + count));
  return Element(sub, std::move(blocks));
}

std::pair<Element, Element> split(const Element& c, std::size_t at) {
  const std::size_t m = c.shape().block_count();
  if (at == 0 || at >= m) throw Error(ErrorKind::SplitInfeasible, "split point must lie strictly inside the block list");
  return {extract(c, 0, at), extract(c, at, m - at)};
}

Element direct_sum(const Element& a, const Element& b) {
  std::vector<std::size_t> dims(a.shape().blocks().begin(), a.shape().blocks().end());
  dims.insert(dims.end(), b.shape().blocks().begin(), b.shape().blocks().end());
  std::vector<Matrix> blocks(a.blocks().begin(), a.blocks().end());
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  return Element(AlgebraShape(std::move(dims)), std::move(blocks));
}

Complex hs_inner(const Element& a, const Element& b) {
  require_same_shape(a, b);
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) s += kernels::dotc(entries(b.block(i)), entries(a.block(i)));
  return s;
}

bool projective_equal(const Element& a, const Element& b, const Tolerances& tol) {
  require_same_shape(a, b);
  const double aa = hs_inner(a, a).real();
  const double bb = hs_inner(b, b).real();
  if (aa == 0.0 || bb == 0.0) throw Error(ErrorKind::ZeroElement, "projective comparison with zero");
  const Complex ab = hs_inner(a, b);
  // Cheap rejection: |r|_op >= |r|_HS / sqrt(dim) and |a|_op <= |a|_HS for the
  // residual r = a - lambda b.
  const double residual_hs = std::sqrt(std::max(0.0, aa - std::norm(ab) / bb));
  if (residual_hs > std::sqrt(static_cast<double>(a.shape().total_dim()) * aa) * tol.orth) return false;
  const Complex lambda = ab / bb;
  return norm(a - lambda * b) <= tol.orth * norm(a);
}

}  // namespace orthograph
