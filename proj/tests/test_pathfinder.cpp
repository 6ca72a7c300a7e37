#include "doctest.h"
#include "orthograph/pathfinder.hpp"
#include "test_support.hpp"

using namespace orthograph;
using namespace testing_support;

namespace {

Element diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return Element::from_matrix(v.asDiagonal());
}

void check_path(const OrthPath& path, const Element& a, const Element& b) {
  REQUIRE(!path.vertices.empty());
  CHECK(path.vertices.front() == a);
  CHECK(path.vertices.back() == b);
  CHECK(path_is_valid(path));
}

}  // namespace

TEST_CASE("witness of a rank-deficient element") {
  const Element b = non_isolated_witness(diag({1, 0}));
  CHECK(norm(b - diag({0, 1})) < 1e-12);
  CHECK(norm(non_isolated_witness(diag({1, 1, 0})) - diag({0, 0, 1})) < 1e-12);
  CHECK_THROWS_AS(non_isolated_witness(Element::identity(AlgebraShape{2})), Error);
  try {
    non_isolated_witness(Element::identity(AlgebraShape{2}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Isolated);
  }
}

TEST_CASE("witness is mutually orthogonal for random deficient elements") {
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    const AlgebraShape shape = (i % 2) ? AlgebraShape{4} : AlgebraShape{2, 3};
    const Element a = sample_element(shape, RankProfile::deficient(1 + i % 2), rng);
    const Element b = non_isolated_witness(a);
    CHECK(mutual_strong(a, b).adjacent());
  }
}

TEST_CASE("third projection") {
  const AlgebraShape m3{3};
  const auto r = third_projection(Projection::rank_one(m3, 0, Vector::Unit(3, 0)),
                                  Projection::rank_one(m3, 0, Vector::Unit(3, 1)));
  CHECK(norm(r.element() - Element::from_matrix(unit_matrix(3, 2, 2))) < 1e-12);

  const AlgebraShape m21{2, 1};
  const auto r2 = third_projection(Projection::rank_one(m21, 0, Vector::Unit(2, 0)),
                                   Projection::rank_one(m21, 0, Vector::Unit(2, 1)));
  CHECK(r2.element() == Element(m21, {Matrix::Zero(2, 2), Matrix::Ones(1, 1)}));

  const AlgebraShape m2{2};
  for (const AlgebraShape& s : {AlgebraShape{1}, AlgebraShape{1, 1}, AlgebraShape{2}}) {
    const auto p = Projection::rank_one(s, 0, Vector::Unit(static_cast<Eigen::Index>(s.block_dim(0)), 0));
    try {
      third_projection(p, p);
      FAIL("expected SmallAlgebra");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SmallAlgebra);
    }
  }
}

TEST_CASE("connect: direct edge, equal endpoints, errors") {
  const Element a = diag({1, 1, 0}), b = diag({0, 1, 1});
  // a = diag(1,1,0), b = diag(0,1,1): e1 and e3 vector states witness both directions.
  const OrthPath p = connect(a, b);
  CHECK(p.length() == 1);
  check_path(p, a, b);

  const Element e11 = diag({1, 0, 0});
  CHECK(connect(e11, e11).length() == 0);
  CHECK(connect(e11, Complex(0, 3) * e11).length() == 0);

  try {
    connect(diag({1, 0}), diag({0, 1}));
    FAIL("expected SmallAlgebra");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SmallAlgebra);
  }
  try {
    connect(Element::identity(AlgebraShape{3}), e11);
    FAIL("expected RightInvertibleEndpoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RightInvertibleEndpoint);
  }
}

TEST_CASE("connect: random rank-deficient pairs stay within four edges") {
  Rng rng(11);
  for (const AlgebraShape& shape : {AlgebraShape{3}, AlgebraShape{4}, AlgebraShape{2, 3}}) {
    for (int i = 0; i < 25; ++i) {
      const Element a = sample_element(shape, RankProfile::deficient(1), rng);
      const Element b = sample_element(shape, RankProfile::deficient(1 + i % 2), rng);
      const OrthPath p = connect(a, b);
      CHECK(p.length() <= 4);
      check_path(p, a, b);
    }
  }
}

TEST_CASE("connect: four or more dimensions need at most three edges") {
  Rng rng(12);
  const AlgebraShape shape{4, 5};
  for (int i = 0; i < 20; ++i) {
    const Element a = sample_element(shape, RankProfile::deficient(1), rng);
    const Element b = sample_element(shape, RankProfile::deficient(1), rng);
    const OrthPath p = connect(a, b);
    CHECK(p.length() <= 3);
    check_path(p, a, b);
  }
}

TEST_CASE("direct sum paths") {
  const Matrix e11 = unit_matrix(2, 0, 0), e22 = unit_matrix(2, 1, 1), z = Matrix::Zero(2, 2);
  const Element x = pair(e11, eye(2)), y = pair(eye(2), e11);
  const OrthPath p = connect_direct_sum(x, y, 1);
  REQUIRE(p.length() == 3);
  check_path(p, x, y);
  CHECK(norm(p.vertices[1] - pair(e22, z)) < 1e-9);
  CHECK(norm(p.vertices[2] - pair(z, e22)) < 1e-9);

  const OrthPath q = connect_direct_sum(pair(z, e11), pair(e22, z), 1);
  CHECK(q.length() == 1);

  const Element u = pair(eye(2), e11), v = pair(eye(2), e22);
  const OrthPath w = connect_direct_sum(u, v, 1);
  CHECK(w.length() <= 4);
  check_path(w, u, v);

  CHECK_THROWS_AS(connect_direct_sum(x, y, 0), Error);
  CHECK_THROWS_AS(connect_direct_sum(x, y, 2), Error);
}

TEST_CASE("direct sum: random cross-deficient pairs") {
  Rng rng(5);
  const AlgebraShape m2{2};
  for (int i = 0; i < 30; ++i) {
    const Element a1 = sample_element(m2, RankProfile::deficient(1), rng);
    const Element b1 = sample_element(m2, RankProfile::full(), rng);
    const Element a2 = sample_element(m2, RankProfile::full(), rng);
    const Element b2 = sample_element(m2, RankProfile::deficient(1), rng);
    const Element x = direct_sum(a1, b1), y = direct_sum(a2, b2);
    const OrthPath p = connect_direct_sum(x, y, 1);
    CHECK(p.length() <= 3);
    check_path(p, x, y);
  }
}
