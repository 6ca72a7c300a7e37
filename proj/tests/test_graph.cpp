#include "doctest.h"
#include "json.hpp"
#include "orthograph/graph.hpp"
#include "orthograph/pathfinder.hpp"
#include "test_support.hpp"

using namespace orthograph;
using namespace testing_support;

TEST_CASE("M2 graph on two projections and the identity") {
  const Element e11 = Element::from_matrix(unit_matrix(2, 0, 0));
  const Element e22 = Element::from_matrix(unit_matrix(2, 1, 1));
  const Element one = Element::identity(AlgebraShape{2});
  const Orthograph g = build_graph({e11, e22, one});
  REQUIRE(g.size() == 3);
  CHECK(g.edges == std::vector<IndexPair>{{0, 1}});
  CHECK(g.indeterminate.empty());

  const ComponentReport r = components_and_distances(g);
  REQUIRE(r.components.size() == 2);
  CHECK(r.components[0] == std::vector<std::size_t>{0, 1});
  CHECK(r.component_diameter[0] == 1);
  CHECK(r.isolated == std::vector<std::size_t>{2});
  CHECK(r.unlinked.empty());
  CHECK(r.max_distance_non_isolated() == 1);
}

TEST_CASE("projective duplicates are merged") {
  Rng rng(3);
  const Element a = sample_element(AlgebraShape{3}, RankProfile::deficient(1), rng);
  const Orthograph g = build_graph({a, 2.0 * a, Complex(0, -1) * a});
  CHECK(g.size() == 1);
  CHECK(g.vertices[0] == a);
}

TEST_CASE("build_graph errors") {
  const Element z = Element::zero(AlgebraShape{2});
  CHECK_THROWS_AS(build_graph({z}), Error);
  CHECK_THROWS_AS(build_graph({Element::identity(AlgebraShape{2}), Element::identity(AlgebraShape{3})}), Error);
}

TEST_CASE("empty edge set gives singleton components") {
  const Orthograph g = build_graph({Element::identity(AlgebraShape{2}), 2.0 * Element::identity(AlgebraShape{2}) +
                                                                           Element::from_matrix(unit_matrix(2, 0, 0))});
  const ComponentReport r = components_and_distances(g);
  CHECK(r.components.size() == g.size());
  CHECK(r.histogram.empty());
}

TEST_CASE("M1+M1 has two vertices and one edge") {
  const AlgebraShape s{1, 1};
  const Element p(s, {Matrix::Ones(1, 1), Matrix::Zero(1, 1)});
  const Element q(s, {Matrix::Zero(1, 1), Matrix::Ones(1, 1)});
  const Orthograph g = build_graph({p, q, 3.0 * p});
  CHECK(g.size() == 2);
  CHECK(g.edges.size() == 1);
  CHECK(components_and_distances(g).component_diameter[0] == 1);
}

TEST_CASE("edges re-verify and adjacency is symmetric on a sampled M3 graph") {
  const Orthograph g = build_graph(sample_vertices(AlgebraShape{3}, 50, 17));
  for (auto [i, j] : g.edges) {
    CHECK(i < j);
    CHECK(mutual_strong(g.vertices[i], g.vertices[j]).adjacent());
    CHECK(mutual_strong(g.vertices[j], g.vertices[i]).adjacent());
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(g.adjacent(i, j) == g.adjacent(j, i));
    CHECK(!g.adjacent(i, i));
  }
}

TEST_CASE("isolated classification") {
  const Element i3 = Element::identity(AlgebraShape{3});
  const Element d = Element::from_matrix(Vector(Eigen::Vector3cd(1, 1, 0)).asDiagonal());
  const IsolationReport r = classify_isolated({i3, d});
  CHECK(r.isolated == std::vector<std::size_t>{0});
  REQUIRE(r.candidates.size() == 1);
  CHECK(norm(r.candidates[0].second - Element::from_matrix(unit_matrix(3, 2, 2))) < 1e-12);

  const IsolationReport s = classify_isolated({pair(eye(2), unit_matrix(2, 0, 0))});
  CHECK(s.isolated.empty());
  CHECK(s.candidates.size() == 1);
}

TEST_CASE("augmentation connects far rank-one vertices in M3") {
  const AlgebraShape m3{3};
  Rng rng(21);
  const Element a = Element::from_matrix(ginibre(3, rng).col(0) * ginibre(3, rng).row(0));
  const Element b = Element::from_matrix(ginibre(3, rng).col(0) * ginibre(3, rng).row(0));
  const Orthograph g = build_graph({a, b});
  REQUIRE(g.edges.empty());
  const Orthograph h = augment_with_paths(g);
  const ComponentReport r = components_and_distances(h);
  CHECK(h.sampled == 2);
  CHECK(r.max_distance_non_isolated(h.sampled) >= 1);
  CHECK(r.max_distance_non_isolated(h.sampled) <= 4);
  CHECK(r.non_isolated_component_count() == 1);
  for (auto [i, j] : h.edges) CHECK(mutual_strong(h.vertices[i], h.vertices[j]).adjacent());

  // Nothing left to do: no new vertices.
  const Orthograph again = augment_with_paths(h);
  CHECK(again.size() == h.size());

  CHECK_THROWS_AS(augment_with_paths(build_graph({Element::from_matrix(unit_matrix(2, 0, 0))})), Error);
}

TEST_CASE("augmented sampled M4 graph has one non-isolated component") {
  const Orthograph h = augment_with_paths(build_graph(sample_vertices(AlgebraShape{4}, 30, 4)));
  const ComponentReport r = components_and_distances(h);
  CHECK(r.non_isolated_component_count() == 1);
  const int worst = r.max_distance_non_isolated(h.sampled);
  CHECK(worst != ComponentReport::kUnreachable);
  CHECK(worst <= 4);
  for (auto [i, j] : h.edges) CHECK(mutual_strong(h.vertices[i], h.vertices[j]).adjacent());
}

TEST_CASE("export formats") {
  const Element e11 = Element::from_matrix(unit_matrix(2, 0, 0));
  const Element e22 = Element::from_matrix(unit_matrix(2, 1, 1));
  Orthograph g = build_graph({e11, e22, Element::identity(AlgebraShape{2})});
  g.seed = 99;
  const std::string dot = export_dot(g);
  CHECK(dot.find("v0 -- v1;") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
  CHECK(dot == export_dot(g));

  g.indeterminate.push_back({1, 2});
  CHECK(export_dot(g).find("v1 -- v2 [style=dashed]") != std::string::npos);
  const auto j = nlohmann::json::parse(export_json(g));
  CHECK(j["format_version"] == 1);
  CHECK(j["indeterminate"][0] == nlohmann::json::array({1, 2}));
  CHECK(j["isolated"] == nlohmann::json::array({2}));

  CHECK(import_json(export_json(g)) == g);
  const Orthograph sampled = build_graph(sample_vertices(AlgebraShape{2, 2}, 20, 8));
  CHECK(import_json(export_json(sampled)) == sampled);
  CHECK_THROWS_AS(import_json("{\"format_version\": 2}"), Error);
  CHECK_THROWS_AS(import_json("not json"), Error);
}

TEST_CASE("sampling is deterministic and follows the mix") {
  const auto a = sample_vertices(AlgebraShape{2, 3}, 40, 5);
  const auto b = sample_vertices(AlgebraShape{2, 3}, 40, 5);
  CHECK(a == b);
  std::size_t invertible = 0;
  for (const Element& v : a) invertible += is_right_invertible(v) ? 1 : 0;
  CHECK(invertible >= 4);
  CHECK(invertible < 20);
}
