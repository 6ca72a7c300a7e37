#pragma once

// Randomized property suites over the library. Each suite draws its own
// samples from a seed and counts cases that pass, fail, or land in the tie
// band (indeterminate, neither pass nor fail).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orthograph/algebra.hpp"

namespace orthograph {

struct SuiteResult {
  std::string name;
  std::string description;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t indeterminate = 0;
  double seconds = 0.0;
  std::vector<std::string> notes;  ///< first few failures, plus summary lines

  std::size_t total() const noexcept { return passed + failed + indeterminate; }
  bool ok() const noexcept { return failed == 0; }
  double indeterminate_rate() const noexcept {
    return total() == 0 ? 0.0 : static_cast<double>(indeterminate) / static_cast<double>(total());
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 500;  ///< per property suite; path suites use samples / 5
  Tolerances tol;
};

// Individual suites. `count` is the number of cases (per shape where a suite
// loops over shapes).
SuiteResult check_modulus_equivalence(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_ambient_invariance(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_scalar_invariance(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_witness_soundness(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_state_projection(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_top_projection_bound(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_join_orthogonality(std::size_t count, std::uint64_t seed, const Tolerances& tol);
SuiteResult check_rank_one_join(std::size_t count, std::uint64_t seed, const Tolerances& tol);

/// Decision vs brute_force_min_lambda(grid_n, refine) on plain BJ pairs in
/// `shape`: generic, repeated top singular value, and rank-deficient x against
/// random, constructed-orthogonal and strong-reduction directions.
SuiteResult check_oracle_consistency(const AlgebraShape& shape, std::size_t count, std::uint64_t seed,
                                     const Tolerances& tol, int grid_n = 200, int refine = 50);

/// Full-rank samples are isolated; rank-deficient ones get a verified neighbour.
SuiteResult check_isolation(const AlgebraShape& shape, std::size_t count, std::uint64_t seed, const Tolerances& tol);

/// connect on random non-right-invertible pairs: verified paths of length <= max_length.
SuiteResult check_path_lengths(const AlgebraShape& shape, std::size_t count, std::uint64_t seed,
                               const Tolerances& tol, std::size_t max_length);

/// connect_direct_sum on M2+M2 pairs with a1, b2 deficient: length <= 3 with
/// the cross-summand shape; a1 = 0, b2 = 0 pairs give length 1.
SuiteResult check_direct_sum_paths(std::size_t count, std::uint64_t seed, const Tolerances& tol);

/// third_projection and connect raise SmallAlgebra on M1, M1+M1, M2.
SuiteResult check_small_algebra_errors(std::uint64_t seed, const Tolerances& tol);

/// Rank-one vertices of M2: neighbours among `candidates` random candidates
/// (plus the canonical partner) form exactly one class, where elements with
/// projectively equal |c*| count as one class.
SuiteResult check_m2_neighbourhoods(std::size_t vertices, std::size_t candidates, std::uint64_t seed,
                                    const Tolerances& tol);

/// The suites `orthograph verify` runs, in order.
std::vector<SuiteResult> run_all_suites(const VerifyOptions& options,
                                        const std::function<void(const SuiteResult&)>& on_done = {});

std::string format_suite(const SuiteResult& r);

}  // namespace orthograph
