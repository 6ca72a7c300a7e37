#include "orthograph/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "orthograph/kernels.hpp"

namespace orthograph {
namespace {

constexpr int kThetaGrid = 720;
constexpr int kGoldenSteps = 60;
// Below this many tolerances of drop, the line search result is followed by
// the full two-dimensional search.
constexpr double kDecisiveDrops = 4.0;
constexpr double kInvPhi = 0.6180339887498949;

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double support(const Matrix& t, double theta) {
  const Complex phase = std::polar(1.0, theta);
  const auto k = t.rows();
  if (k == 1) return (phase * t(0, 0)).real();
  if (k <= 3) {
    Complex h[9];
    for (Eigen::Index c = 0; c < k; ++c) {
      for (Eigen::Index r = 0; r < k; ++r) h[c * k + r] = 0.5 * (phase * t(r, c) + std::conj(phase * t(c, r)));
    }
    return kernels::hermitian_top_eigenvalue(std::span<const Complex>(h, static_cast<std::size_t>(k * k)),
                                             static_cast<std::size_t>(k));
  }
  const Matrix h = hermitian_part(phase * t);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(k - 1);
}

Vector support_vector(const Matrix& t, double theta) {
  const Matrix h = hermitian_part(std::polar(1.0, theta) * t);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvectors().col(h.rows() - 1);
}

Complex form(const Matrix& t, const Vector& v) { return v.dot(t * v); }

template <class F>
double golden_min(F f, double lo, double hi, int steps, double* arg_out) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < steps; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) {
    *arg_out = c;
    return fc;
  }
  *arg_out = d;
  return fd;
}

// min over θ of λmax(Re(e^{iθ}T)): 720-point sweep plus golden refinement.
struct Sweep {
  double depth;
  double theta;
};

Sweep numerical_range_depth(const Matrix& t) {
  if (t.rows() == 1) return {-std::abs(t(0, 0)), std::numbers::pi - std::arg(t(0, 0))};
  const double step = 2.0 * std::numbers::pi / kThetaGrid;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kThetaGrid; ++j) {
    const double v = support(t, j * step);
    if (v < best_val) {
      best_val = v;
      best = j;
    }
  }
  double theta = best * step;
  const double refined = golden_min([&](double th) { return support(t, th); }, (best - 1) * step,
                                    (best + 1) * step, kGoldenSteps, &theta);
  if (refined < best_val) return {refined, theta};
  return {best_val, best * step};
}

// Unit v in span{u, w} with <Tv, v> = target, where target lies on the segment
// between z_u = <Tu,u> and z_w = <Tw,w> (constructive Toeplitz-Hausdorff step).
Vector combine(const Matrix& t, const Vector& u, const Vector& w, Complex target) {
  const Complex zu = form(t, u);
  const Complex zw = form(t, w);
  const Complex span = zw - zu;
  if (std::abs(span) < 1e-300) return u;
  const double s = std::clamp(((target - zu) / span).real(), 0.0, 1.0);
  const Matrix tn = (t - zu * Matrix::Identity(t.rows(), t.cols())) / span;
  const Complex c1 = u.dot(tn * w);
  const Complex c2 = w.dot(tn * u);
  const Complex skew = c1 - std::conj(c2);
  const Complex phase = std::abs(skew) > 0.0 ? std::conj(skew) / std::abs(skew) : Complex(1.0, 0.0);
  const Vector w_rot = phase * w;
  auto at = [&](double alpha) {
    Vector v = std::cos(alpha) * u + std::sin(alpha) * w_rot;
    return Vector(v / v.norm());
  };
  auto value = [&](double alpha) { return form(tn, at(alpha)).real(); };
  double lo = 0.0, hi = 0.5 * std::numbers::pi;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (value(mid) < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return at(0.5 * (lo + hi));
}

// A unit vector (in V-coordinates) whose form value is as close to 0 as the
// boundary of W(T) allows.
Vector numerical_range_witness(const Matrix& t, int grid) {
  const auto k = t.rows();
  if (k == 1) return Vector::Ones(1);
  const double step = 2.0 * std::numbers::pi / grid;
  std::vector<Vector> vs;
  std::vector<Complex> zs;
  vs.reserve(grid);
  for (int j = 0; j < grid; ++j) {
    vs.push_back(support_vector(t, j * step));
    zs.push_back(form(t, vs.back()));
  }
  // Best single boundary point as the fallback.
  std::size_t best = 0;
  for (std::size_t j = 1; j < zs.size(); ++j) {
    if (std::abs(zs[j]) < std::abs(zs[best])) best = j;
  }
  const double scale = std::max(1e-300, t.norm());
  if (std::abs(zs[best]) <= 1e-15 * scale) return vs[best];

  // Crossings of the boundary polygon with the real axis.
  bool have_left = false, have_right = false;
  double left = 0.0, right = 0.0;
  Vector v_left, v_right;
  auto record = [&](double re, const Vector& v) {
    if (re <= 0.0 && (!have_left || re > left)) {
      left = re;
      v_left = v;
      have_left = true;
    }
    if (re >= 0.0 && (!have_right || re < right)) {
      right = re;
      v_right = v;
      have_right = true;
    }
  };
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const std::size_t n = (j + 1) % zs.size();
    const double a = zs[j].imag(), b = zs[n].imag();
    if (a == 0.0) record(zs[j].real(), vs[j]);
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      const double f = a / (a - b);
      const Complex cross = zs[j] + f * (zs[n] - zs[j]);
      const Vector v = combine(t, vs[j], vs[n], Complex(cross.real(), 0.0));
      record(form(t, v).real(), v);
    }
  }
  if (have_left && have_right) {
    if (left == 0.0) return v_left;
    if (right == 0.0) return v_right;
    return combine(t, v_left, v_right, Complex(0.0, 0.0));
  }
  return vs[best];
}

double certified_deficit(double x_norm, double y_norm, const Vector& xv, const Vector& yv) {
  const double xv2 = xv.squaredNorm();
  const double yv2 = yv.squaredNorm();
  const double c = std::abs(xv.dot(yv));
  const double radius = 2.0 * x_norm / y_norm;
  double loss = 2.0 * radius * c;
  if (yv2 > 0.0) loss = std::min(loss, c * c / yv2);
  const double lower = std::sqrt(std::max(0.0, xv2 - loss));
  return std::max(0.0, (x_norm - lower) / x_norm);
}

OrthDecision vacuous() { return {true, 1.0, std::monostate{}}; }

}  // namespace

bool OrthDecision::indeterminate(const Tolerances& tol) const noexcept {
  return std::abs(margin) <= tol.tie_band();
}

Outcome OrthDecision::outcome(const Tolerances& tol) const noexcept {
  if (indeterminate(tol)) return Outcome::Indeterminate;
  return verdict ? Outcome::Orthogonal : Outcome::NotOrthogonal;
}

Outcome MutualDecision::outcome(const Tolerances& tol) const noexcept {
  const Outcome f = forward.outcome(tol);
  const Outcome b = backward.outcome(tol);
  if (f == Outcome::NotOrthogonal || b == Outcome::NotOrthogonal) return Outcome::NotOrthogonal;
  if (f == Outcome::Indeterminate || b == Outcome::Indeterminate) return Outcome::Indeterminate;
  return Outcome::Orthogonal;
}

NormAlong::NormAlong(const Element& x, const Element& y) {
  require_same_shape(x, y);
  std::size_t biggest = 0;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) {
    const Matrix& xb = x.block(i);
    const Matrix& yb = y.block(i);
    dims_.push_back(static_cast<std::size_t>(xb.rows()));
    x_.emplace_back(xb.data(), xb.data() + xb.size());
    y_.emplace_back(yb.data(), yb.data() + yb.size());
    biggest = std::max(biggest, static_cast<std::size_t>(xb.size()));
  }
  work_.resize(biggest);
  scratch_.resize(biggest);
}

double NormAlong::operator()(Complex lambda) {
  double best = 0.0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const std::size_t len = x_[i].size();
    std::span<Complex> out(work_.data(), len);
    kernels::axpy(out, x_[i], y_[i], lambda);
    best = std::max(best, kernels::spectral_norm(out, dims_[i], scratch_));
  }
  return best;
}

MinimizingScalar minimize_along(const Element& x, const Element& y, int iterations) {
  NormAlong f(x, y);
  const double nx = f(0.0);
  const double ny = norm(y);
  if (ny == 0.0) return {0.0, nx};
  const double radius = 2.0 * nx / ny;
  double best_im = 0.0;
  auto inner = [&](double re) {
    double im = 0.0;
    return golden_min([&](double v) { return f(Complex(re, v)); }, -radius, radius, iterations, &im);
  };
  double re = 0.0;
  golden_min(inner, -radius, radius, iterations, &re);
  golden_min([&](double v) { return f(Complex(re, v)); }, -radius, radius, iterations, &best_im);
  const Complex lambda(re, best_im);
  const double achieved = f(lambda);
  if (achieved >= nx) return {0.0, nx};
  return {lambda, achieved};
}

MinimizingScalar brute_force_min_lambda(const Element& x, const Element& y, int grid_n, int refine_steps) {
  require_same_shape(x, y);
  if (x.is_zero() || y.is_zero()) throw Error(ErrorKind::ZeroElement, "brute-force search needs nonzero x and y");
  NormAlong f(x, y);
  const double radius = 2.0 * f(0.0) / norm(y);
  Complex best_lambda = 0.0;
  double best = f(0.0);
  const int n = std::max(grid_n, 2);
  for (int i = 1; i < n; ++i) {
    const double r = radius * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const Complex lambda = std::polar(r, 2.0 * std::numbers::pi * j / n);
      const double v = f(lambda);
      if (v < best) {
        best = v;
        best_lambda = lambda;
      }
    }
  }
  double h = radius / n;
  const Complex dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int s = 0; s < refine_steps; ++s) {
    bool moved = false;
    for (const Complex& d : dirs) {
      const Complex trial = best_lambda + h * d;
      const double v = f(trial);
      if (v < best) {
        best = v;
        best_lambda = trial;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  return {best_lambda, best};
}

OrthDecision bj_orthogonal(const Element& x, const Element& y, const Tolerances& tol) {
  require_same_shape(x, y);
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "orthogonality of the zero element");
  if (y.is_zero()) return vacuous();

  const Matrix xm = x.assembled();
  const Matrix ym = y.assembled();
  const Matrix gram = hermitian_part(xm.adjoint() * xm);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const auto dim = gram.rows();
  const double top = es.eigenvalues()(dim - 1);
  const double x_norm = std::sqrt(std::max(0.0, top));
  const double y_norm = norm(y);

  // Norm-attaining subspace.
  const double cutoff = top - tol.eig * top;
  Eigen::Index first = dim - 1;
  while (first > 0 && es.eigenvalues()(first - 1) >= cutoff) --first;
  const Matrix basis = es.eigenvectors().rightCols(dim - first);

  const Matrix t = basis.adjoint() * xm.adjoint() * ym * basis / (x_norm * y_norm);

  // Basis vectors of the norm-attaining subspace often witness directly
  // (e.g. for elements with orthogonal ranges); try them before sweeping.
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    if (std::abs(t(i, i)) > tol.orth) continue;
    const Vector v = basis.col(i);
    const Vector xv = xm * v;
    const Vector yv = ym * v;
    const double deficit = certified_deficit(x_norm, y_norm, xv, yv);
    if (deficit <= 0.25 * tol.orth) return {true, 1.0 - deficit / tol.orth, WitnessVector{v, xv.norm(), xv.dot(yv)}};
  }

  const Sweep sweep = numerical_range_depth(t);

  if (sweep.depth >= -tol.orth) {
    // A coarse boundary polygon usually suffices; the fine one is the fallback.
    for (int grid : {kThetaGrid / 8, kThetaGrid}) {
      const Vector v = basis * numerical_range_witness(t, grid);
      const Vector xv = xm * v;
      const Vector yv = ym * v;
      const double deficit = certified_deficit(x_norm, y_norm, xv, yv);
      if (deficit <= (grid == kThetaGrid ? 1.0 : 0.25) * tol.orth) {
        return {true, 1.0 - deficit / tol.orth, WitnessVector{v, xv.norm(), xv.dot(yv)}};
      }
    }
  }

  NormAlong f(x, y);
  const double base = f(0.0);
  MinimizingScalar best{0.0, base};
  if (sweep.depth < 0.0) {
    // Steepest descent direction from the support function; a line search
    // along it usually settles the question with a few dozen evaluations.
    const Complex dir = std::polar(1.0, sweep.theta);
    double t = 0.0;
    const double radius = 2.0 * x_norm / y_norm;
    const double value = golden_min([&](double s) { return f(s * dir); }, 0.0, radius, kGoldenSteps, &t);
    if (value < base) best = {t * dir, value};
  }
  if ((base - best.achieved) / base <= kDecisiveDrops * tol.orth) {
    const MinimizingScalar full = minimize_along(x, y);
    if (full.achieved < best.achieved) best = full;
  }
  const double drop = (base - best.achieved) / base;
  return {drop <= tol.orth, -drop, best};
}

Element strong_direction(const Element& a, const Element& b) { return b * (b.adjoint() * a); }

OrthDecision strong_bj(const Element& a, const Element& b, const Tolerances& tol) {
  require_same_shape(a, b);
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "strong orthogonality of the zero element");
  const Element dir = strong_direction(a, b);
  const double nb = norm(b);
  // b b* a at round-off level counts as the zero direction.
  if (norm(dir) <= tol.ker * nb * nb * norm(a)) return vacuous();
  return bj_orthogonal(a, dir, tol);
}

MutualDecision mutual_strong(const Element& a, const Element& b, const Tolerances& tol) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroElement, "orthograph vertices are nonzero");
  return {strong_bj(a, b, tol), strong_bj(b, a, tol)};
}

bool state_witness_check(const Element& a, const Element& b, const PureState& rho, const Tolerances& tol) {
  require_same_shape(a, b);
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "state witness for the zero element");
  const double na = norm(a);
  const double nb = norm(b);
  const double top = rho(a * a.adjoint()).real();
  const double bottom = rho(b * b.adjoint()).real();
  return std::abs(top - na * na) <= tol.orth * na * na && bottom <= tol.orth * nb * nb;
}

bool projection_witness_check(const Projection& p, const Element& a, const Element& b, const Tolerances& tol) {
  require_same_shape(a, b);
  require_same_shape(p.element(), a);
  if (!is_positive(a, tol) || !is_positive(b, tol)) throw Error(ErrorKind::NotPositive, "projection witness needs positive elements");
  if (std::abs(norm(a) - 1.0) > tol.orth || std::abs(norm(b) - 1.0) > tol.orth) {
    throw Error(ErrorKind::NotNormalized, "projection witness needs norm-one elements");
  }
  const Element& pe = p.element();
  return norm(pe * a - pe) <= tol.orth && norm(pe * b) <= tol.orth;
}

bool verify_certificate(const Element& x, const Element& y, const OrthDecision& d, const Tolerances& tol) {
  const double nx = norm(x);
  if (const auto* w = std::get_if<WitnessVector>(&d.certificate)) {
    if (std::abs(w->vector.norm() - 1.0) > tol.vec) return false;
    const Vector xv = x.assembled() * w->vector;
    const Vector yv = y.assembled() * w->vector;
    if (std::abs(xv.norm() - w->attained_norm) > tol.orth * nx) return false;
    if (std::abs(xv.dot(yv) - w->inner) > tol.orth * nx * std::max(1.0, norm(y))) return false;
    return d.verdict && certified_deficit(nx, norm(y), xv, yv) <= tol.orth;
  }
  if (const auto* m = std::get_if<MinimizingScalar>(&d.certificate)) {
    const double actual = norm(x + m->lambda * y);
    if (std::abs(actual - m->achieved) > tol.orth * nx) return false;
    return d.verdict || m->achieved < nx - tol.orth * nx;
  }
  return d.verdict;
}

}  // namespace orthograph
