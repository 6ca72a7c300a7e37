#pragma once

// Explicit neighbours and paths in the orthograph of a finite-dimensional
// C*-algebra. Every path returned here has had each of its edges re-checked
// with mutual_strong.

#include <optional>
#include <vector>

#include "orthograph/algebra.hpp"
#include "orthograph/orthogonality.hpp"

namespace orthograph {

struct OrthPath {
  std::vector<Element> vertices;
  std::vector<MutualDecision> edges;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// For a nonzero a that is not right invertible, b = (1 - â â*)^{1/2} with
/// â = a/|a|; a and b are mutually strongly orthogonal.
/// Throws Isolated for right-invertible a, VerificationFailed if the check fails.
Element non_isolated_witness(const Element& a, const Tolerances& tol = {});

/// A minimal projection r with r p = r q = 0 for minimal p, q. Throws
/// SmallAlgebra on M1, M1+M1 and M2, NotMinimal for higher-rank inputs.
Projection third_projection(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// Unit vector supported in a single block and orthogonal to every vector in
/// `constraints` (assembled coordinates). Blocks are searched lowest index first.
std::optional<std::pair<std::size_t, Vector>> orthogonal_unit_vector(const AlgebraShape& shape,
                                                                     const std::vector<Vector>& constraints);

/// Projection onto the span of assembled-coordinate vectors, each of which must
/// be supported in a single block.
Projection projection_onto(const AlgebraShape& shape, const std::vector<Vector>& vectors);

/// Shortest verified path among a fixed family of candidates (lengths 1, 2, 3)
/// with the length-4 chain a – q_a – r – q_b – b as the guaranteed fallback.
/// Projectively equal endpoints give the single-vertex path.
/// Throws SmallAlgebra, RightInvertibleEndpoint, ZeroElement, VerificationFailed.
OrthPath connect(const Element& a, const Element& b, const Tolerances& tol = {});

/// Path construction for C = A + B where A holds the first `split` blocks:
/// the cross-summand path (a1,b1) – (a',0) – (0,b') – (a2,b2) of length 3
/// (length 1 when a1 = 0 and b2 = 0), or a path inside one summand lifted with
/// zeros in the other. Throws SplitInfeasible for a bad split point.
OrthPath connect_direct_sum(const Element& x, const Element& y, std::size_t split, const Tolerances& tol = {});

/// Verifies the chain; nullopt if an edge fails or consecutive vertices are
/// projectively equal.
std::optional<OrthPath> try_path(std::vector<Element> vertices, const Tolerances& tol = {});

/// Re-verifies every edge of an existing path.
bool path_is_valid(const OrthPath& path, const Tolerances& tol = {});

}  // namespace orthograph
