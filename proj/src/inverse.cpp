#include "cmvscat/inverse.hpp"

#include <cmath>
#include <numbers>

#include "cmvscat/error.hpp"
#include "cmvscat/scatter.hpp"

namespace cmvscat {

namespace {

void require_regular_symbol(const HankelOp& h, double& sigma) {
  sigma = sigma_max(h);
  if (sigma >= 1.0 - 1e-8) {
    throw NotRegularError("Hankel operator of s is not a strict contraction: not in one-to-one regime",
                          sigma);
  }
}

// -exp(i * mean of the continuous argument of s); exact when s = -a_{-1} D/D_*.
cplx phase_estimate(const CircleFunction& s) {
  double acc = 0.0;
  double prev = std::arg(s[0]);
  double unwrapped = prev;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double a = std::arg(s[j]);
    double d = a - prev;
    d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    if (j > 0) unwrapped += d;
    prev = a;
    acc += unwrapped;
  }
  return -std::polar(1.0, acc / static_cast<double>(s.size()));
}

}  // namespace

RecoveryReport recover_verblunsky(const CircleFunction& s, std::size_t n_max, Eigen::Index order) {
  if (order < static_cast<Eigen::Index>(n_max) + 64) throw ArgumentError("recovery needs M >= n_max + 64");
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(std::abs(s[j]) - 1.0) > 1e-6) throw DomainError("scattering function is not unimodular");
  }
  const auto& grid = s.grid();
  const auto coeffs = s.coeffs();
  const HankelOp master = hankel_from_symbol(coeffs, order);
  RecoveryReport rep;
  require_regular_symbol(master, rep.sigma_max);

  std::vector<cplx> a(n_max + 1);
  std::vector<double> diag(n_max + 2);
  for (std::size_t n = 0; n <= n_max + 1; ++n) {
    const HankelOp hn = master.shifted(static_cast<Eigen::Index>(n));
    // sigma of a shifted operator is bounded by that of the unshifted one at order M + n
    const auto u = solve_block(hn, BlockRhs::UnitH2, 1.0, rep.sigma_max).x;
    diag[n] = std::sqrt(u(0).real());
    if (n > n_max) break;
    const auto v = solve_block(hn, BlockRhs::UnitH2Minus, 1.0, rep.sigma_max).x;
    const cplx conj_a = -(hn.matrix().adjoint() * v)(0) / u(0);
    a[n] = std::conj(conj_a);
  }
  rep.rho.resize(n_max + 1);
  rep.consistency.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    rep.rho[n] = diag[n + 1] / diag[n];
    rep.consistency[n] = std::abs(std::norm(a[n]) + rep.rho[n] * rep.rho[n] - 1.0);
    if (rep.consistency[n] > 1e-4) {
      rep.warnings.push_back("consistency gap " + std::to_string(rep.consistency[n]) + " at n=" +
                             std::to_string(n));
    }
    if (std::abs(a[n]) >= 1.0) throw NumericalFailure("recovered coefficient outside the unit disk");
  }

  cplx am1 = phase_estimate(s);
  {
    const ScatteringData trial = forward_scatter(VerblunskySeq(am1, a), grid);
    const auto ratio = (-1.0) * (s * trial.D_star / trial.D.boundary());
    const cplx m = ratio.mean();
    if (std::abs(m) > 1e-8) am1 = m / std::abs(m);
  }
  rep.seq = VerblunskySeq(am1, a);
  const ScatteringData fwd = forward_scatter(rep.seq, grid);
  const auto ratio = (-1.0) * (s * fwd.D_star / fwd.D.boundary());
  double var = 0.0;
  for (std::size_t j = 0; j < ratio.size(); ++j) var += std::norm(ratio[j] - am1);
  rep.a_minus1_spread = std::sqrt(var / static_cast<double>(ratio.size()));
  rep.residual = (fwd.s - s).sup_norm();
  if (rep.a_minus1_spread > 1e-4) rep.warnings.push_back("a_minus1 ratio is not constant on the grid");
  if (rep.residual > 1e-6) rep.warnings.push_back("forward map of the recovered sequence does not reproduce s");
  rep.regular = rep.residual <= 1e-6 && rep.a_minus1_spread <= 1e-4;
  return rep;
}

Eigen::MatrixXcd glm_gram_block(const FourierCoeffs& s, Eigen::Index m, Eigen::Index order) {
  const HankelOp h = hankel_from_symbol(s, order);
  double sig = 0.0;
  require_regular_symbol(h, sig);
  const Eigen::MatrixXcd hm = h.matrix();
  const Eigen::Index ne = (m + 1) / 2;
  const Eigen::Index no = m / 2;
  const Eigen::Index id = order;
  Eigen::LLT<Eigen::MatrixXcd> top(Eigen::MatrixXcd::Identity(id, id) - hm.adjoint() * hm);
  Eigen::LLT<Eigen::MatrixXcd> bottom(Eigen::MatrixXcd::Identity(id, id) - hm * hm.adjoint());
  const Eigen::MatrixXcd xe = top.solve(Eigen::MatrixXcd::Identity(id, ne));
  const Eigen::MatrixXcd yo = bottom.solve(Eigen::MatrixXcd::Identity(id, no));
  // B^{-1} = [[A^{-1}, -H* C^{-1}], [-H A^{-1}, C^{-1}]], A = I - H*H, C = I - HH*.
  const Eigen::MatrixXcd lower_left = -hm * xe;
  Eigen::MatrixXcd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index ri = i / 2;
      const Eigen::Index cj = j / 2;
      if (i % 2 == 0 && j % 2 == 0) out(i, j) = xe(ri, cj);
      else if (i % 2 == 1 && j % 2 == 1) out(i, j) = yo(ri, cj);
      else if (i % 2 == 1) out(i, j) = lower_left(ri, cj);
      else out(i, j) = std::conj(lower_left(cj, ri));
    }
  }
  return out;
}

GlmMatrix glm_matrix(const FourierCoeffs& s, cplx a_minus1, Eigen::Index m, Eigen::Index order) {
  const HankelOp master = hankel_from_symbol(s, order);
  double sig = 0.0;
  require_regular_symbol(master, sig);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index col = 0; col < m; ++col) {
    const Eigen::Index n = col / 2;
    const HankelOp hn = master.shifted(col);
    const Eigen::MatrixXcd hm = hn.matrix();
    if (col % 2 == 0) {
      const Eigen::VectorXcd x = solve_block(hn, BlockRhs::UnitH2, 1.0, sig).x;
      const Eigen::VectorXcd y = -hm * x;
      const double norm = std::sqrt(x(0).real());
      for (Eigen::Index j = 0; 2 * (n + j) < m; ++j) out(2 * (n + j), col) = x(j) / norm;
      for (Eigen::Index k = 0; 2 * (n + k) + 1 < m; ++k) out(2 * (n + k) + 1, col) = y(k) / norm;
    } else {
      const Eigen::VectorXcd y = solve_block(hn, BlockRhs::UnitH2Minus, 1.0, sig).x;
      const Eigen::VectorXcd x = -hm.adjoint() * y;
      const cplx scale = -a_minus1 / std::sqrt(y(0).real());
      for (Eigen::Index j = 0; 2 * (n + 1 + j) < m; ++j) out(2 * (n + 1 + j), col) = scale * x(j);
      for (Eigen::Index k = 0; 2 * (n + k) + 1 < m; ++k) out(2 * (n + k) + 1, col) = scale * y(k);
    }
  }
  return {std::move(out)};
}

GlmMatrix glm_matrix(const VerblunskySeq& seq, Eigen::Index m, Eigen::Index order, const CircleGrid& grid) {
  const auto data = forward_scatter(seq, grid);
  return glm_matrix(data.s.coeffs(), seq.a_minus1(), m, order);
}

double glm_factorization_residual(const FourierCoeffs& s, cplx a_minus1, Eigen::Index m, Eigen::Index order) {
  const Eigen::MatrixXcd lhs = glm_gram_block(s, m, order);
  const Eigen::MatrixXcd glm = glm_matrix(s, a_minus1, m, order).entries;
  return (lhs - glm * glm.adjoint()).norm() / lhs.norm();
}

double glm_factorization_residual(const VerblunskySeq& seq, Eigen::Index m, Eigen::Index order,
                                  const CircleGrid& grid) {
  const auto data = forward_scatter(seq, grid);
  return glm_factorization_residual(data.s.coeffs(), seq.a_minus1(), m, order);
}

Eigen::MatrixXcd l_matrix(const FourierCoeffs& s, Eigen::Index m, Eigen::Index order) {
  const HankelOp master = hankel_from_symbol(s, order);
  double sig = 0.0;
  require_regular_symbol(master, sig);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index n = 0; n < m; ++n) {
    const Eigen::VectorXcd x = solve_block(master.shifted(n), BlockRhs::UnitH2, 1.0, sig).x;
    const double norm = std::sqrt(x(0).real());
    for (Eigen::Index j = 0; n + j < m; ++j) out(n + j, n) = x(j) / norm;
  }
  return out;
}

double l_factorization_residual(const FourierCoeffs& s, Eigen::Index m, Eigen::Index order) {
  const HankelOp h = hankel_from_symbol(s, order);
  const Eigen::MatrixXcd hm = h.matrix();
  Eigen::LLT<Eigen::MatrixXcd> llt(Eigen::MatrixXcd::Identity(order, order) - hm.adjoint() * hm);
  if (llt.info() != Eigen::Success) throw NearSingularError("I - H*H is not positive definite", sigma_max(h));
  const Eigen::MatrixXcd lhs = llt.solve(Eigen::MatrixXcd::Identity(order, m)).topRows(m);
  const Eigen::MatrixXcd l = l_matrix(s, m, order);
  return (lhs - l * l.adjoint()).norm() / lhs.norm();
}

}  // namespace cmvscat
