#include "doctest.h"
#include "orthograph/orthogonality.hpp"
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

const Tolerances tol;

// y with <x v, y v> = 0 for a top right-singular vector v of x, so x ⊥ y.
Element orthogonal_direction(const Element& x, Rng& rng) {
  const Matrix xm = x.assembled();
  Eigen::JacobiSVD<Matrix> svd(xm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector u = svd.matrixU().col(0);
  const auto n = xm.rows();
  const Matrix y = (Matrix::Identity(n, n) - u * u.adjoint()) * ginibre(static_cast<std::size_t>(n), rng);
  return Element::from_matrix(y);
}

bool decisive(const OrthDecision& d) { return !d.indeterminate(tol); }

}  // namespace

TEST_CASE("plain orthogonality of matrix units") {
  const OrthDecision d = bj_orthogonal(diag({1, 0}), diag({0, 1}));
  CHECK(d.verdict);
  CHECK(decisive(d));
  REQUIRE(std::holds_alternative<WitnessVector>(d.certificate));
  const Vector& v = std::get<WitnessVector>(d.certificate).vector;
  CHECK(std::abs(std::abs(v(0)) - 1.0) < 1e-12);
  CHECK(verify_certificate(diag({1, 0}), diag({0, 1}), d));

  const OrthDecision e = bj_orthogonal(diag({1, 0}), diag({1, 0}));
  CHECK(!e.verdict);
  CHECK(decisive(e));
  REQUIRE(std::holds_alternative<MinimizingScalar>(e.certificate));
  const auto& m = std::get<MinimizingScalar>(e.certificate);
  CHECK(std::abs(m.lambda + 1.0) < 1e-6);
  CHECK(m.achieved < 1e-6);
  CHECK(verify_certificate(diag({1, 0}), diag({1, 0}), e));
}

TEST_CASE("strong orthogonality is not symmetric") {
  const Element one = Element::identity(AlgebraShape{2});
  const Element p = diag({1, 0});
  const OrthDecision forward = strong_bj(one, p);
  const OrthDecision backward = strong_bj(p, one);
  CHECK(forward.verdict);
  CHECK(decisive(forward));
  CHECK(!backward.verdict);
  CHECK(decisive(backward));
  // The certificate recovers the full drop: p - p = 0.
  REQUIRE(std::holds_alternative<MinimizingScalar>(backward.certificate));
  CHECK(std::get<MinimizingScalar>(backward.certificate).achieved < 1e-6);
  CHECK(std::abs(std::get<MinimizingScalar>(backward.certificate).lambda + 1.0) < 1e-6);

  const MutualDecision m = mutual_strong(one, p);
  CHECK(!m.adjacent());
  CHECK(m.outcome(tol) == Outcome::NotOrthogonal);

  CHECK(strong_bj(one, Element::zero(AlgebraShape{2})).verdict);
  CHECK_THROWS_AS(strong_bj(Element::zero(AlgebraShape{2}), one), Error);
  CHECK_THROWS_AS(mutual_strong(one, Element::zero(AlgebraShape{2})), Error);
}

TEST_CASE("mutual orthogonality in a direct sum") {
  const Element x = pair(eye(2), unit_matrix(2, 0, 0));
  const Element y = pair(unit_matrix(2, 0, 0), eye(2));
  const MutualDecision m = mutual_strong(x, y);
  CHECK(m.adjacent());
  CHECK(m.outcome(tol) == Outcome::Orthogonal);
  CHECK(mutual_strong(diag({1, 0}), diag({0, 1})).adjacent());
}

TEST_CASE("brute force oracle on the textbook pairs") {
  const auto a = brute_force_min_lambda(diag({1, 0}), diag({1, 0}));
  CHECK(std::abs(a.lambda + 1.0) < 1e-6);
  CHECK(a.achieved < 1e-6);
  CHECK(brute_force_min_lambda(diag({1, 0}), diag({0, 1})).achieved == doctest::Approx(1.0));
  const auto c = brute_force_min_lambda(Element::identity(AlgebraShape{2}), diag({1, 0}));
  CHECK(c.achieved == doctest::Approx(1.0));
  CHECK(std::abs(1.0 + c.lambda) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(brute_force_min_lambda(diag({1, 0}), Element::zero(AlgebraShape{2})), Error);
}

TEST_CASE("state and projection witnesses") {
  const AlgebraShape m2{2};
  const PureState e1(m2, 0, Vector::Unit(2, 0));
  CHECK(state_witness_check(diag({1, 0}), diag({0, 1}), e1));
  CHECK(!state_witness_check(diag({1, 0}), diag({1, 0}), e1));

  const Projection p11 = Projection::rank_one(m2, 0, Vector::Unit(2, 0));
  CHECK(projection_witness_check(p11, diag({1, 0}), diag({0, 1})));
  CHECK(!projection_witness_check(p11, diag({0, 1}), diag({1, 0})));
  CHECK_THROWS_AS(projection_witness_check(p11, diag({2, 0}), diag({0, 1})), Error);
  CHECK_THROWS_AS(projection_witness_check(p11, Element::from_matrix(unit_matrix(2, 0, 1)), diag({0, 1})), Error);

  // The projection certificate is one-sided: here a ⊥s b holds but b ⊥s a fails.
  {
    Matrix am = Matrix::Zero(3, 3);
    am(0, 0) = 1.0;
    am(1, 1) = 0.9;
    Matrix bm = Matrix::Zero(3, 3);
    bm.block(1, 1, 2, 2) << 0.5, 0.5, 0.5, 0.5;
    const Element a = Element::from_matrix(am), b = Element::from_matrix(bm);
    const Projection p = Projection::rank_one(AlgebraShape{3}, 0, Vector::Unit(3, 0));
    CHECK(projection_witness_check(p, a, b));
    CHECK(strong_bj(a, b).verdict);
    CHECK_FALSE(strong_bj(b, a).verdict);
  }

  // Rank-deficient a, b = projection onto a kernel vector, state from the top
  // singular vector of a.
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const Element a = sample_element(AlgebraShape{3}, RankProfile::deficient(1), rng);
    const Matrix am = a.assembled();
    Eigen::JacobiSVD<Matrix> svd(am, Eigen::ComputeFullU);
    const Vector top = svd.matrixU().col(0);
    const Vector ker = svd.matrixU().col(2);
    const Element b = Projection::rank_one(AlgebraShape{3}, 0, ker).element();
    const PureState rho(AlgebraShape{3}, 0, top);
    CHECK(state_witness_check(a, b, rho));
    CHECK(strong_bj(a, b).verdict);
  }
}

TEST_CASE("decision agrees with an independent grid oracle") {
  Rng rng(41);
  int decided = 0;
  for (int i = 0; i < 60; ++i) {
    const AlgebraShape s = (i % 2) ? AlgebraShape{2} : AlgebraShape{3};
    const Element x = sample_element(s, i % 3 ? RankProfile::full() : RankProfile::deficient(1), rng);
    Element y = sample_element(s, RankProfile::full(), rng);
    if (i % 4 == 0) y = orthogonal_direction(x, rng);
    const OrthDecision d = bj_orthogonal(x, y);
    CHECK(verify_certificate(x, y, d));
    if (!decisive(d)) continue;
    ++decided;
    const double nx = oracle_norm(x.assembled());
    const double best = oracle_min_along(x.assembled(), y.assembled(), 60);
    CHECK(d.verdict == (best >= (1.0 - tol.orth) * nx));
  }
  CHECK(decided >= 50);
}

TEST_CASE("scalar multiples do not change verdicts") {
  Rng rng(51);
  for (int i = 0; i < 60; ++i) {
    const Element a = sample_element(AlgebraShape{3}, RankProfile::deficient(1), rng);
    const Element b = (i % 2) ? sample_element(AlgebraShape{3}, RankProfile::deficient(2), rng)
                              : Projection::rank_one(AlgebraShape{3}, 0, kernel_projection(abs_star(a)).support_vector().second).element();
    const MutualDecision base = mutual_strong(a, b);
    const MutualDecision scaled = mutual_strong(Complex(-2.5, 0.7) * a, Complex(0.0, 4.0) * b);
    if (base.outcome(tol) != Outcome::Indeterminate && scaled.outcome(tol) != Outcome::Indeterminate) {
      CHECK(base.adjacent() == scaled.adjacent());
    }
  }
}

TEST_CASE("NormAlong matches the dense norm") {
  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    const AlgebraShape s{1, 2, 4};
    const Element x = sample_element(s, RankProfile::full(), rng);
    const Element y = sample_element(s, RankProfile::full(), rng);
    NormAlong f(x, y);
    const Complex lambda(0.3 * i - 10.0, 0.1 * i);
    CHECK(f(lambda) == doctest::Approx(norm(x + lambda * y)).epsilon(1e-10));
  }
}
