#include "orthograph/sampling.hpp"

#include <Eigen/QR>
#include <cmath>

namespace orthograph {

Matrix ginibre(std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix haar_unitary(std::size_t n, Rng& rng) {
  const Matrix z = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Vector random_unit_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

Matrix random_rank(std::size_t n, std::size_t r, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < r; ++k) {
    const Vector u = random_unit_vector(n, rng);
    const Vector w = random_unit_vector(n, rng);
    std::exponential_distribution<double> scale(1.0);
    m += (0.5 + scale(rng)) * u * w.adjoint();
  }
  return m;
}

std::vector<std::size_t> distribute_rank(const AlgebraShape& shape, std::size_t k) {
  std::vector<std::size_t> out(shape.block_count(), 0);
  if (k > shape.total_dim()) throw Error(ErrorKind::InfeasibleRank, "rank request exceeds total dimension");
  if (k <= shape.max_block_dim()) {
    for (std::size_t i = 0; i < shape.block_count(); ++i) {
      if (shape.block_dim(i) >= k) {
        out[i] = k;
        return out;
      }
    }
  }
  std::size_t left = k;
  for (std::size_t i = 0; i < shape.block_count() && left > 0; ++i) {
    out[i] = std::min(left, shape.block_dim(i));
    left -= out[i];
  }
  return out;
}

Element sample_element(const AlgebraShape& shape, RankProfile profile, Rng& rng) {
  std::vector<Matrix> blocks;
  switch (profile.kind) {
    case RankProfile::Kind::Full:
      for (std::size_t n : shape.blocks()) blocks.push_back(ginibre(n, rng));
      break;
    case RankProfile::Kind::Deficient: {
      if (profile.k == 0) throw Error(ErrorKind::InfeasibleRank, "deficiency must be at least 1");
      if (profile.k == shape.total_dim()) throw Error(ErrorKind::ZeroElement, "full deficiency gives the zero element");
      const auto deficiency = distribute_rank(shape, profile.k);
      for (std::size_t i = 0; i < shape.block_count(); ++i) {
        const std::size_t n = shape.block_dim(i);
        blocks.push_back(random_rank(n, n - deficiency[i], rng));
      }
      break;
    }
    case RankProfile::Kind::Projection: {
      if (profile.k == 0) throw Error(ErrorKind::ZeroElement, "rank-0 projection is the zero element");
      const auto ranks = distribute_rank(shape, profile.k);
      for (std::size_t i = 0; i < shape.block_count(); ++i) {
        const std::size_t n = shape.block_dim(i);
        const Matrix u = haar_unitary(n, rng);
        const Matrix lead = u.leftCols(static_cast<Eigen::Index>(ranks[i]));
        blocks.push_back(lead * lead.adjoint());
      }
      break;
    }
  }
  return Element(shape, std::move(blocks));
}

Element sample_element(const AlgebraShape& shape, RankProfile profile, std::uint64_t seed) {
  Rng rng(seed);
  return sample_element(shape, profile, rng);
}

}  // namespace orthograph
