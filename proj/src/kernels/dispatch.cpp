#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string_view>

#include "orthograph/kernels.hpp"

namespace orthograph::kernels {

#ifdef ORTHOGRAPH_HAVE_AVX2
const KernelTable& avx2_table_impl() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#ifdef ORTHOGRAPH_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("ORTHOGRAPH_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

void gram(std::span<cplx> out, std::span<const cplx> z, std::size_t n) {
  const KernelTable& k = active();
  for (std::size_t j = 0; j < n; ++j) {
    const auto col_j = z.subspan(j * n, n);
    for (std::size_t i = 0; i <= j; ++i) {
      const cplx v = k.dotc(z.subspan(i * n, n), col_j);
      out[j * n + i] = v;
      out[i * n + j] = std::conj(v);
    }
    out[j * n + j] = cplx(out[j * n + j].real(), 0.0);
  }
}

double hermitian_top_eigenvalue(std::span<const cplx> h, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return h[0].real();
  if (n == 2) {
    const double a = h[0].real();
    const double d = h[3].real();
    const double half_diff = 0.5 * (a - d);
    return 0.5 * (a + d) + std::hypot(half_diff, std::abs(h[2]));
  }
  if (n == 3) {
    // Trigonometric solution of the characteristic cubic.
    const double a00 = h[0].real(), a11 = h[4].real(), a22 = h[8].real();
    const cplx a01 = h[3], a02 = h[6], a12 = h[7];
    const double off = std::norm(a01) + std::norm(a02) + std::norm(a12);
    const double q = (a00 + a11 + a22) / 3.0;
    const double b00 = a00 - q, b11 = a11 - q, b22 = a22 - q;
    const double p2 = b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * off;
    if (p2 <= 0.0) return q;
    const double p = std::sqrt(p2 / 6.0);
    // det(B) / p^3 with B = A - qI
    const double det = b00 * b11 * b22 + 2.0 * (a01 * a12 * std::conj(a02)).real() -
                       b00 * std::norm(a12) - b11 * std::norm(a02) - b22 * std::norm(a01);
    const double r = std::clamp(det / (2.0 * p * p * p), -1.0, 1.0);
    return q + 2.0 * p * std::cos(std::acos(r) / 3.0);
  }
  Eigen::Map<const Eigen::MatrixXcd> m(h.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(static_cast<Eigen::Index>(n) - 1);
}

double spectral_norm(std::span<const cplx> z, std::size_t n, std::span<cplx> scratch) {
  if (n == 1) return std::abs(z[0]);
  gram(scratch.first(n * n), z, n);
  return std::sqrt(std::max(0.0, hermitian_top_eigenvalue(scratch.first(n * n), n)));
}

}  // namespace orthograph::kernels
