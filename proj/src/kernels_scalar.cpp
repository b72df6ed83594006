#include "cmvscat/kernels.hpp"

namespace cmvscat::kernels {
namespace {

void butterfly(cplx* lo, cplx* hi, const cplx* tw, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const cplx v = hi[j] * tw[j];
    hi[j] = lo[j] - v;
    lo[j] += v;
  }
}

void schur_step(cplx alpha, const cplx* z, cplx* f, std::size_t n) {
  const cplx alpha_bar = std::conj(alpha);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx zf = z[j] * f[j];
    f[j] = (alpha + zf) / (1.0 + alpha_bar * zf);
  }
}

void mul(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = x[j] * y[j];
}

void div(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = x[j] / y[j];
}

cplx wdot(const cplx* x, const cplx* y, const double* w, std::size_t n) {
  cplx acc{0.0, 0.0};
  if (w == nullptr) {
    for (std::size_t j = 0; j < n; ++j) acc += x[j] * std::conj(y[j]);
  } else {
    for (std::size_t j = 0; j < n; ++j) acc += x[j] * std::conj(y[j]) * w[j];
  }
  return acc;
}

}  // namespace

const Table& scalar() {
  static const Table table{"scalar", butterfly, schur_step, mul, div, wdot};
  return table;
}

}  // namespace cmvscat::kernels
