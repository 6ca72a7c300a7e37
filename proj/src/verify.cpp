#include "orthograph/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <sstream>

#include "orthograph/orthogonality.hpp"
#include "orthograph/pathfinder.hpp"
#include "orthograph/sampling.hpp"

namespace orthograph {
namespace {

constexpr std::size_t kMaxNotes = 5;

class Tally {
 public:
  Tally(std::string name, std::string description) : start_(std::chrono::steady_clock::now()) {
    r_.name = std::move(name);
    r_.description = std::move(description);
  }

  void pass() { ++r_.passed; }
  void band() { ++r_.indeterminate; }
  void fail(const std::string& what) {
    ++r_.failed;
    if (r_.notes.size() < kMaxNotes) r_.notes.push_back(what);
  }
  void check(bool ok, const std::string& what) { ok ? pass() : fail(what); }
  void note(std::string line) { r_.notes.push_back(std::move(line)); }

  SuiteResult finish() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r_;
  }

 private:
  SuiteResult r_;
  std::chrono::steady_clock::time_point start_;
};

std::string case_label(std::size_t i) { return "case " + std::to_string(i); }

const AlgebraShape& pick(const std::vector<AlgebraShape>& shapes, std::size_t i) { return shapes[i % shapes.size()]; }

// A nonzero element from a rotating mix of rank profiles.
Element mixed_element(const AlgebraShape& shape, std::size_t i, Rng& rng) {
  const std::size_t total = shape.total_dim();
  std::uniform_int_distribution<std::size_t> k(1, total - 1);
  switch (i % 4) {
    case 0:
      return sample_element(shape, RankProfile::full(), rng);
    case 1:
      return total > 1 ? sample_element(shape, RankProfile::deficient(k(rng)), rng)
                       : sample_element(shape, RankProfile::full(), rng);
    case 2:
      return total > 1 ? sample_element(shape, RankProfile::projection(k(rng)), rng)
                       : sample_element(shape, RankProfile::projection(1), rng);
    default:
      return total > 1 ? sample_element(shape, RankProfile::deficient(total - 1), rng)
                       : sample_element(shape, RankProfile::full(), rng);
  }
}

// Second element of a pair: half the time built to sit next to `a` in the
// orthograph so that both verdicts occur.
Element partner_for(const Element& a, std::size_t i, Rng& rng) {
  if (i % 2 == 0 || is_right_invertible(a)) return mixed_element(a.shape(), i / 2 + 1, rng);
  if (i % 4 == 1) return non_isolated_witness(a);
  const Element s = sample_element(a.shape(), RankProfile::full(), rng);
  const Projection q = kernel_projection(abs_star(a));
  return q.element() * s * q.element();
}

bool in_band(const OrthDecision& d, const Tolerances& tol) { return d.indeterminate(tol); }

Matrix orthogonal_complement_projector(const Vector& u) {
  const auto n = u.size();
  return Matrix::Identity(n, n) - u * u.adjoint() / u.squaredNorm();
}

Element single(const Matrix& m) { return Element::from_matrix(m); }

}  // namespace

SuiteResult check_modulus_equivalence(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("modulus-equivalence", "a ⊥s b has the same verdict as |a*| ⊥s |b*|");
  Rng rng(seed);
  const std::vector<AlgebraShape> shapes{{2}, {3}, {2, 2}, {1, 3}};
  for (std::size_t i = 0; i < count; ++i) {
    const Element a = mixed_element(pick(shapes, i), i / shapes.size(), rng);
    const Element b = partner_for(a, i, rng);
    const OrthDecision d = strong_bj(a, b, tol);
    const OrthDecision e = strong_bj(abs_star(a), abs_star(b), tol);
    if (in_band(d, tol) || in_band(e, tol)) {
      t.band();
      continue;
    }
    t.check(d.verdict == e.verdict, case_label(i) + ": verdicts differ");
  }
  return t.finish();
}

SuiteResult check_ambient_invariance(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("ambient-invariance", "a ⊥s b in M_n has the same verdict after embedding into M_n + M_k, k = 1, 2, 3");
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + i % 2;
    const std::size_t k = 1 + (i / 2) % 3;
    const AlgebraShape base{n};
    const AlgebraShape big{n, k};
    const Element a = mixed_element(base, i / 2, rng);
    const Element b = partner_for(a, i, rng);
    const OrthDecision d = strong_bj(a, b, tol);
    const OrthDecision e = strong_bj(embed(a, 0, big), embed(b, 0, big), tol);
    if (in_band(d, tol) || in_band(e, tol)) {
      t.band();
      continue;
    }
    t.check(d.verdict == e.verdict, case_label(i) + ": verdict changes with the ambient algebra");
  }
  return t.finish();
}

SuiteResult check_scalar_invariance(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("scalar-invariance", "mutual verdicts are unchanged by nonzero scalar multiples");
  Rng rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> mag(-3.0, 3.0);
  const std::vector<AlgebraShape> shapes{{2}, {3}, {2, 2}, {4}};
  for (std::size_t i = 0; i < count; ++i) {
    const Element a = mixed_element(pick(shapes, i), i / shapes.size(), rng);
    const Element b = partner_for(a, i, rng);
    const Complex mu = std::polar(std::exp(mag(rng)), 3.0 * g(rng));
    const Complex nu = std::polar(std::exp(mag(rng)), 3.0 * g(rng));
    const MutualDecision d = mutual_strong(a, b, tol);
    const MutualDecision e = mutual_strong(mu * a, nu * b, tol);
    if (d.outcome(tol) == Outcome::Indeterminate || e.outcome(tol) == Outcome::Indeterminate) {
      t.band();
      continue;
    }
    t.check(d.adjacent() == e.adjacent(), case_label(i) + ": scaling changed the verdict");
  }
  return t.finish();
}

SuiteResult check_witness_soundness(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("witness-soundness", "a passing state or projection witness implies the strong verdict");
  Rng rng(seed);
  std::size_t state_hits = 0, projection_hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + i % 3;
    const AlgebraShape shape{n};
    const bool constructed = i % 4 != 3;  // every fourth case is unconstrained
    if (i % 2 == 0) {
      // State witness for a ⊥s b: rho = top left singular vector of a.
      const Element a = sample_element(shape, RankProfile::deficient(1 + (i / 2) % (n - 1)), rng);
      const Matrix am = a.assembled();
      Eigen::JacobiSVD<Matrix> svd(am, Eigen::ComputeFullU);
      const Vector u = svd.matrixU().col(0);
      Matrix bm = ginibre(n, rng);
      if (constructed) bm = orthogonal_complement_projector(u) * bm;
      const Element b = single(bm);
      if (b.is_zero()) continue;
      const PureState rho(shape, 0, u, tol);
      if (!state_witness_check(a, b, rho, tol)) {
        t.pass();
        continue;
      }
      ++state_hits;
      const OrthDecision d = strong_bj(a, b, tol);
      if (in_band(d, tol)) {
        t.band();
        continue;
      }
      t.check(d.verdict, case_label(i) + ": state witness passed but a ⊥s b is false");
    } else {
      // Projection witness: p a = p, p b = 0, both positive of norm one,
      // certifies a ⊥s b (|a + bc| >= |p(a + bc)| = |p| = 1).
      const Vector u = random_unit_vector(n, rng);
      const Matrix perp = orthogonal_complement_projector(u);
      const Matrix h = ginibre(n, rng);
      Matrix am = u * u.adjoint() + 0.9 * perp * (h * h.adjoint()) * perp / std::max(1.0, (h * h.adjoint()).norm());
      const Matrix kmat = ginibre(n, rng);
      Matrix bm = (constructed ? perp : Matrix::Identity(n, n)) * (kmat * kmat.adjoint()) *
                  (constructed ? perp : Matrix::Identity(n, n));
      const Element a_raw = single(am);
      const Element b_raw = single(bm);
      const Element a = (1.0 / norm(a_raw)) * a_raw;
      const Element b = (1.0 / norm(b_raw)) * b_raw;
      const Projection p = Projection::rank_one(shape, 0, u);
      if (!projection_witness_check(p, a, b, tol)) {
        t.pass();
        continue;
      }
      ++projection_hits;
      const OrthDecision d = strong_bj(a, b, tol);
      if (in_band(d, tol)) {
        t.band();
        continue;
      }
      t.check(d.verdict, case_label(i) + ": projection witness passed but a ⊥s b is false");
    }
  }
  t.note("state witnesses exercised: " + std::to_string(state_hits) +
         ", projection witnesses exercised: " + std::to_string(projection_hits));
  return t.finish();
}

SuiteResult check_state_projection(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("state-projection", "p a p = rho(a) p for the minimal projection p of a vector state rho");
  Rng rng(seed);
  const std::vector<AlgebraShape> shapes{{2}, {3}, {2, 3}, {1, 2, 2}};
  for (std::size_t i = 0; i < count; ++i) {
    const AlgebraShape& shape = pick(shapes, i);
    const std::size_t block = (i / shapes.size()) % shape.block_count();
    const PureState rho(shape, block, random_unit_vector(shape.block_dim(block), rng), tol);
    const Projection p = minimal_projection_from_state(rho);
    const Element a = sample_element(shape, RankProfile::full(), rng);
    const double residual = norm(p.element() * a * p.element() - rho(a) * p.element());
    t.check(residual <= 1e-9 * norm(a), case_label(i) + ": residual " + std::to_string(residual));
  }
  (void)tol;
  return t.finish();
}

SuiteResult check_top_projection_bound(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("top-projection-bound", "the top minimal projection p of a positive a satisfies p <= a/|a|");
  Rng rng(seed);
  const std::vector<AlgebraShape> shapes{{2}, {3}, {2, 2}, {4}};
  for (std::size_t i = 0; i < count; ++i) {
    const AlgebraShape& shape = pick(shapes, i);
    Element g = sample_element(shape, RankProfile::full(), rng);
    Element a = g * g.adjoint();
    if (i % 3 == 1) a = a + 5.0 * sample_element(shape, RankProfile::projection(1 + i % shape.total_dim() % 2), rng);
    if (i % 3 == 2) a = sample_element(shape, RankProfile::projection(1 + (i / 3) % shape.total_dim()), rng);
    const Projection p = top_minimal_projection(a, tol);
    const Element gap = (1.0 / norm(a)) * a - p.element();
    double lowest = 0.0;
    for (const Matrix& m : gap.blocks()) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
      lowest = std::min(lowest, es.eigenvalues()(0));
    }
    t.check(p.minimal() && lowest >= -1e-9, case_label(i) + ": smallest eigenvalue " + std::to_string(lowest));
  }
  return t.finish();
}

SuiteResult check_join_orthogonality(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("join-orthogonality", "a projection orthogonal to rank-one p and q annihilates p v q");
  Rng rng(seed);
  const std::vector<AlgebraShape> shapes{{3}, {4}, {2, 2}, {1, 3}};
  for (std::size_t i = 0; i < count; ++i) {
    const AlgebraShape& shape = pick(shapes, i);
    const std::size_t bp = i % shape.block_count();
    const std::size_t bq = (i / 2) % shape.block_count();
    const Projection p = Projection::rank_one(shape, bp, random_unit_vector(shape.block_dim(bp), rng));
    const Projection q = Projection::rank_one(shape, bq, random_unit_vector(shape.block_dim(bq), rng));
    Projection r = third_projection(p, q, tol);
    if (i % 2 == 1) {
      // A random vector orthogonal to both ranges instead of the canonical one.
      const std::size_t block = r.support_vector().first;
      std::vector<Vector> spans;
      for (const Projection* s : {&p, &q}) {
        const auto [sb, sv] = s->support_vector();
        if (sb == block) spans.push_back(sv);
      }
      Vector w = random_unit_vector(shape.block_dim(block), rng);
      if (!spans.empty()) {
        Matrix basis(w.size(), static_cast<Eigen::Index>(spans.size()));
        for (std::size_t c = 0; c < spans.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = spans[c];
        w -= basis * basis.completeOrthogonalDecomposition().solve(w);
      }
      if (w.norm() > 1e-6) r = Projection::rank_one(shape, block, w);
    }
    const Projection j = join_projections(p, q, tol);
    const double residual = norm(j.element() * r.element());
    t.check(residual <= 1e-9, case_label(i) + ": residual " + std::to_string(residual));
  }
  return t.finish();
}

SuiteResult check_rank_one_join(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("rank-one-join", "for distinct rank-one p, q in one block, (p v q) - p is a rank-one projection");
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + i % 4;
    const AlgebraShape shape{n};
    const Vector x = random_unit_vector(n, rng);
    Vector y = random_unit_vector(n, rng);
    if (i % 5 == 0) y = x + 1e-3 * random_unit_vector(n, rng);  // nearly parallel
    const Projection p = Projection::rank_one(shape, 0, x);
    const Projection q = Projection::rank_one(shape, 0, y);
    const Projection j = join_projections(p, q, tol);
    try {
      const Projection d = Projection::from_element(j.element() - p.element(), tol);
      t.check(d.rank() == 1 && j.rank() == 2, case_label(i) + ": ranks " + std::to_string(j.rank()) + ", " +
                                                   std::to_string(d.rank()));
    } catch (const Error& e) {
      t.fail(case_label(i) + ": " + e.what());
    }
  }
  return t.finish();
}

SuiteResult check_oracle_consistency(const AlgebraShape& shape, std::size_t count, std::uint64_t seed,
                                     const Tolerances& tol, int grid_n, int refine) {
  Tally t("oracle-consistency " + shape.to_string(),
          "x ⊥ y decision agrees with a grid search for min |x + λy| outside the tie band");
  Rng rng(seed);
  const std::size_t total = shape.total_dim();
  std::size_t orthogonal = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Element x = Element::zero(shape);
    switch (i % 3) {
      case 0:
        x = sample_element(shape, RankProfile::full(), rng);
        break;
      case 1: {
        // Repeated top singular value: unitary times a diagonal with two equal leading entries.
        std::vector<Matrix> blocks;
        for (std::size_t b = 0; b < shape.block_count(); ++b) {
          const std::size_t n = shape.block_dim(b);
          Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
          std::uniform_real_distribution<double> u(0.1, 0.9);
          for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = u(rng);
          s(0) = 1.0;
          if (n > 1) s(1) = 1.0;
          blocks.push_back(haar_unitary(n, rng) * s.cast<Complex>().asDiagonal() * haar_unitary(n, rng));
        }
        x = Element(shape, std::move(blocks));
        break;
      }
      default:
        x = sample_element(shape, RankProfile::deficient(1 + (i / 3) % (total - 1)), rng);
    }
    Element y = Element::zero(shape);
    switch ((i / 3) % 3) {
      case 0:
        y = sample_element(shape, RankProfile::full(), rng);
        break;
      case 1: {
        // Constructed so that some norm-attaining vector v has <xv, yv> = 0.
        const Matrix xm = x.assembled();
        Eigen::JacobiSVD<Matrix> svd(xm, Eigen::ComputeFullU);
        const Vector u = svd.matrixU().col(0);
        const Matrix perp = orthogonal_complement_projector(u);
        const Element g = sample_element(shape, RankProfile::full(), rng);
        std::vector<Matrix> blocks;
        for (std::size_t b = 0; b < shape.block_count(); ++b) {
          const auto off = static_cast<Eigen::Index>(shape.offset(b));
          const auto n = static_cast<Eigen::Index>(shape.block_dim(b));
          blocks.push_back(perp.block(off, off, n, n) * g.block(b));
        }
        y = Element(shape, std::move(blocks));
        break;
      }
      default: {
        const Element b = sample_element(shape, RankProfile::deficient(1), rng);
        y = strong_direction(x, b);
      }
    }
    if (y.is_zero()) y = sample_element(shape, RankProfile::full(), rng);
    const OrthDecision d = bj_orthogonal(x, y, tol);
    if (in_band(d, tol)) {
      t.band();
      continue;
    }
    const double nx = norm(x);
    const MinimizingScalar m = brute_force_min_lambda(x, y, grid_n, refine);
    const bool oracle = m.achieved >= (1.0 - tol.orth) * nx;
    std::ostringstream what;
    what << case_label(i) << ": decision " << d.verdict << " margin " << d.margin << ", oracle drop "
         << (nx - m.achieved) / nx;
    if (d.verdict) ++orthogonal;
    t.check(oracle == d.verdict && verify_certificate(x, y, d, tol), what.str());
  }
  t.note("orthogonal verdicts: " + std::to_string(orthogonal) + " of " + std::to_string(count));
  return t.finish();
}

SuiteResult check_isolation(const AlgebraShape& shape, std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("isolation " + shape.to_string(),
          "full-rank elements are isolated; rank-deficient ones have a verified neighbour");
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Element a = sample_element(shape, RankProfile::full(), rng);
    bool isolated = false;
    try {
      non_isolated_witness(a, tol);
    } catch (const Error& e) {
      isolated = e.kind() == ErrorKind::Isolated;
    }
    t.check(isolated && is_right_invertible(a, tol), "full rank " + case_label(i) + " not classified isolated");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = 1 + i % (shape.total_dim() - 1);
    const Element a = sample_element(shape, RankProfile::deficient(k), rng);
    try {
      const Element b = non_isolated_witness(a, tol);
      const MutualDecision d = mutual_strong(a, b, tol);
      if (d.outcome(tol) == Outcome::Indeterminate) {
        t.band();
        continue;
      }
      t.check(d.adjacent() && !is_right_invertible(a, tol), "deficient " + case_label(i) + " witness not adjacent");
    } catch (const Error& e) {
      t.fail("deficient " + case_label(i) + ": " + e.what());
    }
  }
  return t.finish();
}

SuiteResult check_path_lengths(const AlgebraShape& shape, std::size_t count, std::uint64_t seed,
                               const Tolerances& tol, std::size_t max_length) {
  Tally t("path-length " + shape.to_string(),
          "connect joins non-right-invertible pairs by verified paths of length <= " + std::to_string(max_length));
  Rng rng(seed);
  const std::size_t total = shape.total_dim();
  std::vector<std::size_t> histogram(max_length + 2, 0);
  auto vertex = [&](std::size_t i) {
    std::uniform_int_distribution<std::size_t> k(1, total - 1);
    switch (i % 3) {
      case 0:
        return sample_element(shape, RankProfile::deficient(1), rng);
      case 1:
        return sample_element(shape, RankProfile::deficient(k(rng)), rng);
      default:
        return sample_element(shape, RankProfile::projection(k(rng)), rng);
    }
  };
  for (std::size_t i = 0; i < count; ++i) {
    const Element a = vertex(i);
    Element b = vertex(i / 3 + 1);
    while (projective_equal(a, b, tol)) b = vertex(i / 3 + 1);
    try {
      const OrthPath p = connect(a, b, tol);
      histogram[std::min(p.length(), max_length + 1)]++;
      const bool ends = p.vertices.front() == a && p.vertices.back() == b;
      t.check(ends && p.length() <= max_length && path_is_valid(p, tol),
              case_label(i) + ": length " + std::to_string(p.length()));
    } catch (const Error& e) {
      t.fail(case_label(i) + ": " + e.what());
    }
  }
  std::ostringstream h;
  h << "lengths:";
  for (std::size_t l = 0; l < histogram.size(); ++l) {
    if (histogram[l]) h << " " << l << "x" << histogram[l];
  }
  t.note(h.str());
  return t.finish();
}

SuiteResult check_direct_sum_paths(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
  Tally t("direct-sum-paths", "cross-deficient pairs in M2+M2 are joined through (a',0) and (0,b') in <= 3 steps");
  Rng rng(seed);
  const AlgebraShape m2{2};
  for (std::size_t i = 0; i < count; ++i) {
    const bool degenerate = i % 10 == 9;
    const Element a1 = degenerate ? Element::zero(m2) : sample_element(m2, RankProfile::deficient(1), rng);
    const Element b1 = sample_element(m2, i % 2 ? RankProfile::full() : RankProfile::deficient(1), rng);
    const Element a2 = sample_element(m2, i % 3 ? RankProfile::full() : RankProfile::projection(1), rng);
    const Element b2 = degenerate ? Element::zero(m2) : sample_element(m2, RankProfile::deficient(1), rng);
    const Element x = direct_sum(a1, b1), y = direct_sum(a2, b2);
    try {
      const OrthPath p = connect_direct_sum(x, y, 1, tol);
      bool shape_ok = path_is_valid(p, tol) && p.vertices.front() == x && p.vertices.back() == y;
      if (degenerate) {
        shape_ok = shape_ok && p.length() == 1;
      } else {
        shape_ok = shape_ok && p.length() <= 3;
        if (p.length() == 3) {
          shape_ok = shape_ok && split(p.vertices[1], 1).second.is_zero() && split(p.vertices[2], 1).first.is_zero();
        }
      }
      t.check(shape_ok, case_label(i) + ": length " + std::to_string(p.length()));
    } catch (const Error& e) {
      t.fail(case_label(i) + ": " + e.what());
    }
  }
  return t.finish();
}

SuiteResult check_small_algebra_errors(std::uint64_t seed, const Tolerances& tol) {
  Tally t("small-algebra-errors", "third_projection and connect refuse M1, M1+M1 and M2");
  Rng rng(seed);
  for (const AlgebraShape& shape : {AlgebraShape{1}, AlgebraShape{1, 1}, AlgebraShape{2}}) {
    const Projection p = Projection::rank_one(shape, 0, Vector::Unit(static_cast<Eigen::Index>(shape.block_dim(0)), 0));
    auto raises_small = [&](auto&& f, const std::string& what) {
      try {
        f();
        t.fail(what + " on " + shape.to_string() + " returned normally");
      } catch (const Error& e) {
        t.check(e.kind() == ErrorKind::SmallAlgebra, what + " on " + shape.to_string() + ": " + e.what());
      }
    };
    raises_small([&] { third_projection(p, p, tol); }, "third_projection");
    const Element a = shape.total_dim() > 1 ? sample_element(shape, RankProfile::projection(1), rng)
                                            : sample_element(shape, RankProfile::full(), rng);
    const Element b = sample_element(shape, RankProfile::full(), rng);
    raises_small([&] { connect(a, b, tol); }, "connect");
  }
  return t.finish();
}

SuiteResult check_m2_neighbourhoods(std::size_t vertices, std::size_t candidates, std::uint64_t seed,
                                    const Tolerances& tol) {
  Tally t("m2-neighbourhoods", "each rank-one vertex of M2 has neighbours in exactly one class");
  Rng rng(seed);
  const AlgebraShape m2{2};
  std::size_t band_pairs = 0;
  for (std::size_t v = 0; v < vertices; ++v) {
    const Element a = sample_element(m2, RankProfile::deficient(1), rng);
    const Element partner = non_isolated_witness(a, tol);
    std::vector<Element> pool{partner};
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t c = 0; c < candidates; ++c) {
      const std::size_t slot = c * 10 / std::max<std::size_t>(candidates, 1);
      if (slot < 4) {
        pool.push_back(sample_element(m2, RankProfile::deficient(1), rng));
      } else if (slot < 7) {
        pool.push_back(sample_element(m2, RankProfile::full(), rng));
      } else if (slot < 9) {
        pool.push_back(Complex(g(rng), g(rng)) * partner);
      } else {
        const Element noise = sample_element(m2, RankProfile::full(), rng);
        pool.push_back(partner + (0.05 * norm(partner) / norm(noise)) * noise);
      }
    }
    std::vector<Element> classes;  // |c*| representatives
    for (const Element& c : pool) {
      if (c.is_zero()) continue;
      const MutualDecision d = mutual_strong(a, c, tol);
      const Outcome o = d.outcome(tol);
      if (o == Outcome::Indeterminate) ++band_pairs;
      if (o != Outcome::Orthogonal) continue;
      const Element m = abs_star(c);
      const bool known = std::any_of(classes.begin(), classes.end(),
                                     [&](const Element& r) { return projective_equal(m, r, tol); });
      if (!known) classes.push_back(m);
    }
    t.check(classes.size() == 1, "vertex " + std::to_string(v) + ": " + std::to_string(classes.size()) + " classes");
  }
  t.note("tie-band candidate pairs skipped: " + std::to_string(band_pairs));
  return t.finish();
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& o, const std::function<void(const SuiteResult&)>& on_done) {
  std::vector<SuiteResult> out;
  auto add = [&](SuiteResult r) {
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  };
  const std::size_t n = o.samples;
  const std::size_t paths = std::max<std::size_t>(1, n / 5);
  std::uint64_t s = o.seed;
  add(check_modulus_equivalence(n, s++, o.tol));
  add(check_ambient_invariance(n, s++, o.tol));
  add(check_scalar_invariance(n, s++, o.tol));
  add(check_witness_soundness(n, s++, o.tol));
  add(check_state_projection(n, s++, o.tol));
  add(check_top_projection_bound(n, s++, o.tol));
  add(check_join_orthogonality(n, s++, o.tol));
  add(check_rank_one_join(n, s++, o.tol));
  for (const AlgebraShape& shape : {AlgebraShape{2}, AlgebraShape{3}, AlgebraShape{2, 2}}) {
    add(check_oracle_consistency(shape, n, s++, o.tol));
  }
  for (const AlgebraShape& shape : {AlgebraShape{2}, AlgebraShape{3}, AlgebraShape{2, 2}}) {
    add(check_isolation(shape, std::max<std::size_t>(1, (2 * n) / 5), s++, o.tol));
  }
  for (const AlgebraShape& shape :
       {AlgebraShape{3}, AlgebraShape{4}, AlgebraShape{5}, AlgebraShape{2, 3}, AlgebraShape{3, 3}}) {
    add(check_path_lengths(shape, paths, s++, o.tol, 4));
  }
  add(check_path_lengths(AlgebraShape{4, 5}, paths, s++, o.tol, 3));
  add(check_direct_sum_paths(paths, s++, o.tol));
  add(check_small_algebra_errors(s++, o.tol));
  add(check_m2_neighbourhoods(std::max<std::size_t>(1, n / 10), 2 * n, s++, o.tol));
  return out;
}

std::string format_suite(const SuiteResult& r) {
  std::ostringstream os;
  os << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.passed << " passed, " << r.failed << " failed, "
     << r.indeterminate << " indeterminate (" << r.seconds << " s)";
  for (const std::string& n : r.notes) os << "\n    " << n;
  return os.str();
}

}  // namespace orthograph
