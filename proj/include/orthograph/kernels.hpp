#pragma once

// Data-parallel complex kernels used by the hot loops of the orthogonality
// decision (norm evaluations along x + lambda*y, Gram matrices, Hilbert-Schmidt
// pairings). A scalar reference implementation is always present; an AVX2/FMA
// variant is compiled on x86-64 and selected at runtime when the CPU has it.
//
// Set ORTHOGRAPH_KERNELS=scalar in the environment to force the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace orthograph::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;
  /// out[i] = x[i] + lambda * y[i]; all spans have equal length.
  void (*axpy)(std::span<cplx> out, std::span<const cplx> x, std::span<const cplx> y, cplx lambda);
  /// sum_i conj(x[i]) * y[i]
  cplx (*dotc)(std::span<const cplx> x, std::span<const cplx> y);
  /// sum_i |x[i]|^2
  double (*norm_sq)(std::span<const cplx> x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table() noexcept;

/// The table chosen at first use (AVX2 if available, unless overridden).
const KernelTable& active() noexcept;

inline void axpy(std::span<cplx> out, std::span<const cplx> x, std::span<const cplx> y, cplx lambda) {
  active().axpy(out, x, y, lambda);
}
inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) { return active().dotc(x, y); }
inline double norm_sq(std::span<const cplx> x) { return active().norm_sq(x); }

/// Gram matrix out = Z^* Z for a column-major n x n matrix Z (out column-major).
void gram(std::span<cplx> out, std::span<const cplx> z, std::size_t n);

/// Largest eigenvalue of a column-major n x n Hermitian matrix. Closed forms
/// for n <= 3, dense Hermitian eigensolver above that.
double hermitian_top_eigenvalue(std::span<const cplx> h, std::size_t n);

/// Largest singular value of a column-major n x n matrix via its Gram matrix.
/// `scratch` must hold at least n*n entries.
double spectral_norm(std::span<const cplx> z, std::size_t n, std::span<cplx> scratch);

}  // namespace orthograph::kernels
