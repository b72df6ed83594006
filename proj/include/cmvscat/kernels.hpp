#pragma once

// Data-parallel inner loops over complex grids. Every kernel has a scalar
// reference implementation; an AVX2+FMA variant is selected at runtime when
// the CPU supports it. Set CMVSCAT_KERNELS=scalar to force the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace cmvscat::kernels {

using cplx = std::complex<double>;

struct Table {
  std::string_view name;
  // lo[j], hi[j] <- lo[j] + tw[j] hi[j], lo[j] - tw[j] hi[j]
  void (*butterfly)(cplx* lo, cplx* hi, const cplx* tw, std::size_t n);
  // One backward Schur step on grid values: f <- (alpha + z f) / (1 + conj(alpha) z f)
  void (*schur_step)(cplx alpha, const cplx* z, cplx* f, std::size_t n);
  void (*mul)(const cplx* x, const cplx* y, cplx* out, std::size_t n);
  void (*div)(const cplx* x, const cplx* y, cplx* out, std::size_t n);
  // sum_j x[j] conj(y[j]) w[j]; w == nullptr means unit weights
  cplx (*wdot)(const cplx* x, const cplx* y, const double* w, std::size_t n);
};

const Table& scalar();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const Table* avx2();

const Table& active();

}  // namespace cmvscat::kernels
