#pragma once

// Independent reference computations: direct sums, closed forms and dense
// linear algebra that do not share code paths with the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/opuc.hpp"

namespace cmvscat::oracle {

using cplx = std::complex<double>;

inline cplx root(std::size_t j, std::size_t n) {
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));
}

// (1/N) sum_j g_j t_j^{-k}, O(N) per coefficient.
inline cplx direct_coeff(const std::vector<cplx>& g, int k) {
  const std::size_t n = g.size();
  cplx acc{};
  for (std::size_t j = 0; j < n; ++j) {
    acc += g[j] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n));
  }
  return acc / static_cast<double>(n);
}

inline std::vector<cplx> samples(const CircleFunction& f) { return {f.samples().begin(), f.samples().end()}; }

// Poisson integral of grid data at an interior point z.
inline cplx poisson(const std::vector<cplx>& g, cplx z) {
  const std::size_t n = g.size();
  cplx acc{};
  for (std::size_t j = 0; j < n; ++j) {
    const cplx t = root(j, n);
    acc += g[j] * (1.0 - std::norm(z)) / std::norm(t - z);
  }
  return acc / static_cast<double>(n);
}

// Cauchy-type evaluation sum_k c_k z^k of the k >= 0 part, via direct sums.
inline cplx herglotz_at(const std::vector<cplx>& w, cplx z) {
  const std::size_t n = w.size();
  cplx acc{};
  for (std::size_t j = 0; j < n; ++j) {
    const cplx t = root(j, n);
    acc += (t + z) / (t - z) * w[j];
  }
  return acc / static_cast<double>(n);
}

// Entry-by-entry dense CMV product with scalar loops (no block helper).
inline Eigen::MatrixXcd cmv_dense(const VerblunskySeq& seq, int n) {
  auto a = [&](int k) { return seq.a(static_cast<std::size_t>(k)); };
  auto rho = [&](int k) { return std::sqrt(1.0 - std::norm(a(k))); };
  Eigen::MatrixXcd even = Eigen::MatrixXcd::Zero(n + 2, n + 2), odd = even;
  for (int k = 0; k + 1 < n + 2; k += 2) {
    even(k, k) = a(k);
    even(k, k + 1) = rho(k);
    even(k + 1, k) = rho(k);
    even(k + 1, k + 1) = -std::conj(a(k));
  }
  odd(0, 0) = -std::conj(seq.a_minus1());
  for (int k = 1; k + 1 < n + 2; k += 2) {
    odd(k, k) = a(k);
    odd(k, k + 1) = rho(k);
    odd(k + 1, k) = rho(k);
    odd(k + 1, k + 1) = -std::conj(a(k));
  }
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Zero(n + 2, n + 2);
  for (int i = 0; i < n + 2; ++i)
    for (int j = 0; j < n + 2; ++j)
      for (int k = 0; k < n + 2; ++k) prod(i, j) += odd(i, k) * even(k, j);
  return prod.topLeftCorner(n, n);
}

// Exponent of t of the n-th element in the order 1, t^-1, t, t^-2, t^2, ...
inline int cmv_power(int n) { return n % 2 == 0 ? n / 2 : -(n + 1) / 2; }

// Gram-Schmidt in L^2(w dm) of 1, t^-1, t, ... with positive leading
// coefficients; odd members then rotated by -conj(a_{-1}). Column n of the
// result holds the coefficients of P_n in the monomial order above.
inline Eigen::MatrixXcd gram_schmidt_coeffs(const std::vector<cplx>& w, int m, cplx a_minus1) {
  // k(i,j) = <t^{p_j}, t^{p_i}> = w^(p_i - p_j); with k = L L*, C = L^{-*} gives C* k C = I.
  Eigen::MatrixXcd k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) k(i, j) = direct_coeff(w, cmv_power(i) - cmv_power(j));
  Eigen::LLT<Eigen::MatrixXcd> llt(k);
  const Eigen::MatrixXcd l = llt.matrixL();
  Eigen::MatrixXcd coeffs = l.adjoint().inverse();
  for (int n = 1; n < m; n += 2) coeffs.col(n) *= -std::conj(a_minus1);
  return coeffs;
}

inline cplx eval_cmv_coeffs(const Eigen::VectorXcd& c, cplx t) {
  cplx acc{};
  for (int i = 0; i < c.size(); ++i) acc += c(i) * std::pow(t, cmv_power(i));
  return acc;
}

// Closed-form outer function of a finitely supported sequence:
// D(z) = prod rho_k / phi*_M(z), from the monic recursion in the Schur parameters.
inline cplx bernstein_szego_D(const VerblunskySeq& seq, cplx z) {
  cplx phi = 1.0, phi_rev = 1.0;
  double rho = 1.0;
  for (std::size_t k = 0; k < seq.support(); ++k) {
    const cplx alpha = -seq.a_minus1() * std::conj(seq.a(k));
    const cplx next = z * phi - std::conj(alpha) * phi_rev;
    phi_rev = phi_rev - alpha * z * phi;
    phi = next;
    rho *= std::sqrt(1.0 - std::norm(alpha));
  }
  return rho / phi_rev;
}

}  // namespace cmvscat::oracle
