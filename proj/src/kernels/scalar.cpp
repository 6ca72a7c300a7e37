#include "orthograph/kernels.hpp"

namespace orthograph::kernels {
namespace {

void axpy_scalar(std::span<cplx> out, std::span<const cplx> x, std::span<const cplx> y, cplx lambda) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double yr = y[i].real();
    const double yi = y[i].imag();
    out[i] = cplx(x[i].real() + lambda.real() * yr - lambda.imag() * yi,
                  x[i].imag() + lambda.real() * yi + lambda.imag() * yr);
  }
}

cplx dotc_scalar(std::span<const cplx> x, std::span<const cplx> y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm_sq_scalar(std::span<const cplx> x) {
  double s = 0.0;
  for (const cplx& v : x) s += v.real() * v.real() + v.imag() * v.imag();
  return s;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar", &axpy_scalar, &dotc_scalar, &norm_sq_scalar};
  return table;
}

}  // namespace orthograph::kernels
