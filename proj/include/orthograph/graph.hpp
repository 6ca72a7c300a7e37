#pragma once

// Sampled orthographs: vertices are nonzero elements up to scalar multiples,
// edges join mutually strongly orthogonal pairs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthograph/algebra.hpp"
#include "orthograph/orthogonality.hpp"

namespace orthograph {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct Orthograph {
  AlgebraShape shape{1};
  std::vector<Element> vertices;
  /// vertices[0, sampled) came from the input; later ones were added by
  /// augment_with_paths and carry only the edges of the paths they lie on.
  std::size_t sampled = 0;
  /// Unordered edges stored as (i, j) with i < j, sorted.
  std::vector<IndexPair> edges;
  /// Pairs whose mutual decision fell inside the tie band; never edges.
  std::vector<IndexPair> indeterminate;
  std::optional<std::uint64_t> seed;
  Tolerances tol;

  std::size_t size() const noexcept { return vertices.size(); }
  bool adjacent(std::size_t i, std::size_t j) const;
  std::vector<std::vector<std::size_t>> neighbours() const;

  friend bool operator==(const Orthograph&, const Orthograph&);
};

/// Pairwise mutual_strong on projectively deduplicated vertices (first
/// occurrence kept). Throws ZeroElement and ShapeMismatch; an empty list
/// gives an empty graph of shape M1.
Orthograph build_graph(const std::vector<Element>& vertices, const Tolerances& tol = {});

struct IsolationReport {
  std::vector<std::size_t> isolated;  ///< right invertible
  std::vector<std::pair<std::size_t, Element>> candidates;  ///< with a verified neighbour
  std::vector<std::size_t> unresolved;  ///< witness construction failed verification
};

IsolationReport classify_isolated(const std::vector<Element>& vertices, const Tolerances& tol = {});

struct ComponentReport {
  static constexpr int kUnreachable = -1;

  std::vector<std::vector<std::size_t>> components;  ///< ordered by smallest member
  std::vector<std::size_t> component_of;
  std::vector<std::size_t> isolated;  ///< right-invertible vertices
  /// Not right invertible but without a sampled neighbour.
  std::vector<std::size_t> unlinked;
  std::vector<std::vector<int>> distances;
  std::vector<int> eccentricity;       ///< within the vertex's component
  std::vector<int> component_diameter;
  /// Observed distance (upper bound) -> number of unordered vertex pairs.
  std::map<int, std::size_t> histogram;

  /// Largest distance between non-isolated vertices with index below
  /// `limit`, or kUnreachable if two of them lie in different components.
  int max_distance_non_isolated(std::size_t limit = static_cast<std::size_t>(-1)) const;
  std::size_t non_isolated_component_count() const;
};

ComponentReport components_and_distances(const Orthograph& g);

/// Connects every pair of sampled non-isolated vertices that are farther apart
/// than four edges (or disconnected) with `connect`, adding the intermediate
/// vertices (reused when projectively equal to an existing one) and the path
/// edges. Afterwards the sampled non-isolated vertices lie in one component
/// at pairwise distance <= 4. Throws SmallAlgebra.
Orthograph augment_with_paths(const Orthograph& g, const Tolerances& tol = {});

/// Vertex sample: 40% rank deficient, 30% projections, 20% neighbours built
/// from earlier sampled vertices, 10% full rank.
std::vector<Element> sample_vertices(const AlgebraShape& shape, std::size_t count, std::uint64_t seed);

std::string export_dot(const Orthograph& g);
std::string export_json(const Orthograph& g);
/// Inverse of export_json. Throws ParseError.
Orthograph import_json(const std::string& text);

/// Plain-text summary of a component report.
std::string format_report(const Orthograph& g, const ComponentReport& r);

}  // namespace orthograph
