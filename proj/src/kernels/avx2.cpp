// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "orthograph/kernels.hpp"

namespace orthograph::kernels {
namespace {

// Two complex doubles per 256-bit lane: [re0 im0 re1 im1].

void axpy_avx2(std::span<cplx> out, std::span<const cplx> x, std::span<const cplx> y, cplx lambda) {
  const std::size_t n = out.size();
  const double* xp = reinterpret_cast<const double*>(x.data());
  const double* yp = reinterpret_cast<const double*>(y.data());
  double* op = reinterpret_cast<double*>(out.data());
  const __m256d lr = _mm256_set1_pd(lambda.real());
  const __m256d li = _mm256_set1_pd(lambda.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    // even lanes: lr*yr - li*yi, odd lanes: lr*yi + li*yr
    const __m256d ly = _mm256_fmaddsub_pd(lr, yv, _mm256_mul_pd(li, ys));
    _mm256_storeu_pd(op + 2 * i, _mm256_add_pd(_mm256_loadu_pd(xp + 2 * i), ly));
  }
  for (; i < n; ++i) {
    out[i] = cplx(x[i].real() + lambda.real() * y[i].real() - lambda.imag() * y[i].imag(),
                  x[i].imag() + lambda.real() * y[i].imag() + lambda.imag() * y[i].real());
  }
}

cplx dotc_avx2(std::span<const cplx> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  const double* xp = reinterpret_cast<const double*>(x.data());
  const double* yp = reinterpret_cast<const double*>(y.data());
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);                              // xr*yr, xi*yi
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);  // xr*yi, xi*yr
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sr = re[0] + re[1] + re[2] + re[3];
  double si = (im[0] - im[1]) + (im[2] - im[3]);
  for (; i < n; ++i) {
    sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    si += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sr, si};
}

double norm_sq_avx2(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* xp = reinterpret_cast<const double*>(x.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

}  // namespace

const KernelTable& avx2_table_impl() noexcept {
  static const KernelTable table{"avx2", &axpy_avx2, &dotc_avx2, &norm_sq_avx2};
  return table;
}

}  // namespace orthograph::kernels
