#pragma once

// Seeded random elements: Ginibre blocks, Haar unitaries, rank-deficient
// elements and random projections. Every function is deterministic given its
// seed or generator state.

#include <cstdint>
#include <random>

#include "orthograph/algebra.hpp"

namespace orthograph {

using Rng = std::mt19937_64;

struct RankProfile {
  enum class Kind { Full, Deficient, Projection };
  Kind kind = Kind::Full;
  std::size_t k = 0;

  static RankProfile full() { return {Kind::Full, 0}; }
  /// Assembled rank total_dim - k.
  static RankProfile deficient(std::size_t k) { return {Kind::Deficient, k}; }
  /// Random projection of total rank k.
  static RankProfile projection(std::size_t k) { return {Kind::Projection, k}; }
};

/// n x n matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(std::size_t n, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix haar_unitary(std::size_t n, Rng& rng);

/// Uniformly distributed unit vector in C^n.
Vector random_unit_vector(std::size_t n, Rng& rng);

/// Random matrix of exact rank r built as a sum of r random outer products.
Matrix random_rank(std::size_t n, std::size_t r, Rng& rng);

/// Deficiency (or projection rank) per block: single block (the first block
/// large enough) when k <= max block dim, otherwise spread across blocks
/// smallest index first.
std::vector<std::size_t> distribute_rank(const AlgebraShape& shape, std::size_t k);

/// Errors: InfeasibleRank when k exceeds total_dim (or k = 0 for the
/// deficient/projection profiles), ZeroElement when the result would be zero.
Element sample_element(const AlgebraShape& shape, RankProfile profile, Rng& rng);
Element sample_element(const AlgebraShape& shape, RankProfile profile, std::uint64_t seed);

}  // namespace orthograph
