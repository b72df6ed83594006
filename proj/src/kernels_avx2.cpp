// Compiled with -mavx2 -mfma. Only intrinsics and plain double arithmetic are
// used here so that no inline library code is emitted with AVX2 encodings.

#include <immintrin.h>

#include "cmvscat/kernels.hpp"

namespace cmvscat::kernels {
namespace {

inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }

// (a0 + i a1)(b0 + i b1) for two interleaved complex lanes.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d cdiv(__m256d x, __m256d y) {
  const __m256d y_re = _mm256_movedup_pd(y);
  const __m256d y_im = _mm256_permute_pd(y, 0xF);
  const __m256d x_sw = _mm256_permute_pd(x, 0x5);
  const __m256d num = _mm256_fmsubadd_pd(x, y_re, _mm256_mul_pd(x_sw, y_im));
  const __m256d yy = _mm256_mul_pd(y, y);
  const __m256d den = _mm256_add_pd(yy, _mm256_permute_pd(yy, 0x5));
  return _mm256_div_pd(num, den);
}

inline void scalar_mul(const double* a, const double* b, double* out) {
  const double re = a[0] * b[0] - a[1] * b[1];
  const double im = a[0] * b[1] + a[1] * b[0];
  out[0] = re;
  out[1] = im;
}

inline void scalar_div(const double* x, const double* y, double* out) {
  const double den = y[0] * y[0] + y[1] * y[1];
  const double re = (x[0] * y[0] + x[1] * y[1]) / den;
  const double im = (x[1] * y[0] - x[0] * y[1]) / den;
  out[0] = re;
  out[1] = im;
}

void butterfly(cplx* lo_c, cplx* hi_c, const cplx* tw_c, std::size_t n) {
  double* lo = raw(lo_c);
  double* hi = raw(hi_c);
  const double* tw = raw(tw_c);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(lo + 2 * j);
    const __m256d v = cmul(_mm256_loadu_pd(hi + 2 * j), _mm256_loadu_pd(tw + 2 * j));
    _mm256_storeu_pd(hi + 2 * j, _mm256_sub_pd(a, v));
    _mm256_storeu_pd(lo + 2 * j, _mm256_add_pd(a, v));
  }
  for (; j < n; ++j) {
    double v[2];
    scalar_mul(hi + 2 * j, tw + 2 * j, v);
    const double a0 = lo[2 * j], a1 = lo[2 * j + 1];
    hi[2 * j] = a0 - v[0];
    hi[2 * j + 1] = a1 - v[1];
    lo[2 * j] = a0 + v[0];
    lo[2 * j + 1] = a1 + v[1];
  }
}

void schur_step(cplx alpha_c, const cplx* z_c, cplx* f_c, std::size_t n) {
  const double ar = alpha_c.real(), ai = alpha_c.imag();
  const double* z = raw(z_c);
  double* f = raw(f_c);
  const __m256d alpha = _mm256_setr_pd(ar, ai, ar, ai);
  const __m256d alpha_bar = _mm256_setr_pd(ar, -ai, ar, -ai);
  const __m256d one = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d zf = cmul(_mm256_loadu_pd(z + 2 * j), _mm256_loadu_pd(f + 2 * j));
    const __m256d num = _mm256_add_pd(alpha, zf);
    const __m256d den = _mm256_add_pd(one, cmul(alpha_bar, zf));
    _mm256_storeu_pd(f + 2 * j, cdiv(num, den));
  }
  const double abar[2] = {ar, -ai};
  for (; j < n; ++j) {
    double zf[2], t[2];
    scalar_mul(z + 2 * j, f + 2 * j, zf);
    scalar_mul(abar, zf, t);
    const double num[2] = {ar + zf[0], ai + zf[1]};
    const double den[2] = {1.0 + t[0], t[1]};
    scalar_div(num, den, f + 2 * j);
  }
}

void mul(const cplx* x_c, const cplx* y_c, cplx* out_c, std::size_t n) {
  const double* x = raw(x_c);
  const double* y = raw(y_c);
  double* out = raw(out_c);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    _mm256_storeu_pd(out + 2 * j,
                     cmul(_mm256_loadu_pd(x + 2 * j), _mm256_loadu_pd(y + 2 * j)));
  }
  for (; j < n; ++j) scalar_mul(x + 2 * j, y + 2 * j, out + 2 * j);
}

void div(const cplx* x_c, const cplx* y_c, cplx* out_c, std::size_t n) {
  const double* x = raw(x_c);
  const double* y = raw(y_c);
  double* out = raw(out_c);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    _mm256_storeu_pd(out + 2 * j,
                     cdiv(_mm256_loadu_pd(x + 2 * j), _mm256_loadu_pd(y + 2 * j)));
  }
  for (; j < n; ++j) scalar_div(x + 2 * j, y + 2 * j, out + 2 * j);
}

cplx wdot(const cplx* x_c, const cplx* y_c, const double* w, std::size_t n) {
  const double* x = raw(x_c);
  const double* y = raw(y_c);
  // x * conj(y): re = x0 y0 + x1 y1, im = x1 y0 - x0 y1
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * j);
    const __m256d yv = _mm256_loadu_pd(y + 2 * j);
    const __m256d y_re = _mm256_movedup_pd(yv);
    const __m256d y_im = _mm256_permute_pd(yv, 0xF);
    const __m256d x_sw = _mm256_permute_pd(xv, 0x5);
    __m256d p = _mm256_fmsubadd_pd(xv, y_re, _mm256_mul_pd(x_sw, y_im));
    if (w != nullptr) {
      const __m256d wv = _mm256_setr_pd(w[j], w[j], w[j + 1], w[j + 1]);
      p = _mm256_mul_pd(p, wv);
    }
    acc = _mm256_add_pd(acc, p);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; j < n; ++j) {
    const double wj = w == nullptr ? 1.0 : w[j];
    re += (x[2 * j] * y[2 * j] + x[2 * j + 1] * y[2 * j + 1]) * wj;
    im += (x[2 * j + 1] * y[2 * j] - x[2 * j] * y[2 * j + 1]) * wj;
  }
  return {re, im};
}

}  // namespace

const Table& avx2_table() {
  static const Table table{"avx2", butterfly, schur_step, mul, div, wdot};
  return table;
}

}  // namespace cmvscat::kernels
