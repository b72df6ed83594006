#include "cmvscat/hankel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "cmvscat/error.hpp"

namespace cmvscat {

HankelOp::HankelOp(std::vector<cplx> negative_coeffs, Eigen::Index order, Eigen::Index shift)
    : neg_(std::move(negative_coeffs)), order_(order), shift_(shift) {
  if (order < 1 || shift < 0) throw ArgumentError("Hankel order must be positive and shift nonnegative");
  if (static_cast<std::size_t>(2 * order - 1 + shift) > neg_.size()) {
    throw ArgumentError("not enough negative Fourier coefficients for this Hankel order");
  }
}

Eigen::MatrixXcd HankelOp::matrix() const {
  Eigen::MatrixXcd h(order_, order_);
  for (Eigen::Index j = 0; j < order_; ++j) {
    for (Eigen::Index k = 0; k < order_; ++k) h(k, j) = entry(k, j);
  }
  return h;
}

HankelOp hankel_from_symbol(const FourierCoeffs& s, Eigen::Index order) {
  const auto n = static_cast<int>(s.size());
  std::vector<cplx> neg;
  neg.reserve(static_cast<std::size_t>(n / 2 - 1));
  for (int m = 1; m < n / 2; ++m) neg.push_back(s[-m]);
  if (order > n / 4) throw ArgumentError("Hankel order must not exceed N/4");
  return {std::move(neg), order};
}

double sigma_max(const HankelOp& h) {
  const Eigen::MatrixXcd m = h.matrix();
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigenvalue iteration failed for H*H");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

BlockSolve solve_block(const HankelOp& h, BlockRhs rhs, double r, std::optional<double> sigma) {
  if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("radius must lie in (0, 1]");
  const Eigen::Index m = h.order();
  const Eigen::MatrixXcd hm = h.matrix();
  const double sig = sigma ? *sigma : sigma_max(h);
  if (r == 1.0 && sig >= 1.0 - 1e-10) {
    throw NearSingularError("I - H*H is numerically singular", sig);
  }
  const Eigen::MatrixXcd prod = rhs == BlockRhs::UnitH2 ? Eigen::MatrixXcd(hm.adjoint() * hm)
                                                        : Eigen::MatrixXcd(hm * hm.adjoint());
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m, m) - (r * r) * prod;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) throw NearSingularError("Cholesky of I - r^2 H*H failed", sig);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(m);
  b(0) = 1.0;
  BlockSolve out;
  out.x = llt.solve(b);
  out.residual = (a * out.x - b).norm();
  out.condition = 1.0 / std::max(1e-300, 1.0 - r * r * sig * sig);
  if (out.residual > 1e-10 * out.condition) throw NumericalFailure("block solve residual too large");
  return out;
}

namespace {

// Values on the grid of the polynomial sum_j v_j z^j (j < N/2).
CircleFunction polynomial_on_grid(const Eigen::VectorXcd& v, const CircleGrid& grid) {
  const std::size_t n = grid.size();
  if (static_cast<std::size_t>(v.size()) >= n / 2) throw ArgumentError("grid too small for the Hankel order");
  std::vector<cplx> c(n, cplx{});
  for (Eigen::Index j = 0; j < v.size(); ++j) c[static_cast<std::size_t>(j)] = v(j);
  return CircleFunction::from_coeffs(FourierCoeffs(grid, std::move(c)));
}

}  // namespace

AakData aak_data(const HankelOp& h, const CircleGrid& grid) {
  const double sig = sigma_max(h);
  auto g = solve_block(h, BlockRhs::UnitH2, 1.0, sig).x;
  auto hv = solve_block(h, BlockRhs::UnitH2Minus, 1.0, sig).x;
  const double g0 = g(0).real();
  const double psi0 = 1.0 / std::sqrt(g0);
  const auto g_on_grid = polynomial_on_grid(g, grid);

  auto psi_b = CircleFunction::constant(grid, 1.0 / psi0) / g_on_grid;
  auto psi_d = DiskFunction::project(psi_b);
  std::vector<cplx> psi_t(psi_d.coeffs().begin(), psi_d.coeffs().end());
  psi_t[0] = psi0;

  const Eigen::VectorXcd num = -(h.matrix().adjoint() * hv);
  auto phi_b = CircleFunction::monomial(grid, 1) * polynomial_on_grid(num, grid) / g_on_grid;
  auto phi_d = DiskFunction::project(phi_b);
  std::vector<cplx> phi_t(phi_d.coeffs().begin(), phi_d.coeffs().end());
  phi_t[0] = 0.0;

  return {std::move(g), std::move(hv), psi0,
          DiskFunction(DiskFunction::Side::Interior, std::move(psi_t), std::move(psi_b)),
          DiskFunction(DiskFunction::Side::Interior, std::move(phi_t), std::move(phi_b))};
}

DiskFunction psi_h(const HankelOp& h, const CircleGrid& grid) { return aak_data(h, grid).psi; }

DiskFunction phi_h(const HankelOp& h, const CircleGrid& grid) { return aak_data(h, grid).phi; }

LimitSolve limit_point_evaluation(const HankelOp& h) {
  LimitSolve out{};
  out.sigma_max = sigma_max(h);
  if (out.sigma_max < 1.0 - 1e-8) {
    out.exists = true;
    out.g0 = solve_block(h, BlockRhs::UnitH2, 1.0, out.sigma_max).x(0).real();
    return out;
  }
  for (double r : {0.9, 0.99, 0.999}) {
    out.sweep.emplace_back(r, solve_block(h, BlockRhs::UnitH2, r, out.sigma_max).x(0).real());
  }
  out.g0 = out.sweep.back().second;
  out.exists = out.g0 <= 1e6;
  return out;
}

RegularityResult regularity_test(const FourierCoeffs& s, double d0, Eigen::Index order) {
  RegularityResult out{};
  out.rhs = 1.0 / (d0 * d0);
  out.converged = true;
  const HankelOp h = hankel_from_symbol(s, order);
  const LimitSolve lim = limit_point_evaluation(h);
  out.lhs = lim.g0;
  out.sigma_max = lim.sigma_max;
  if (!lim.exists) {
    out.regular = false;
    out.reason = "point evaluation limit does not exist (sigma_max = 1)";
    return out;
  }
  if (out.sigma_max >= 1.0 - 1e-8) {
    out.regular = false;
    out.reason = "sigma_max within 1e-8 of 1";
    return out;
  }
  const Eigen::Index doubled = 2 * order;
  if (doubled <= static_cast<Eigen::Index>(s.size() / 4)) {
    const LimitSolve big = limit_point_evaluation(hankel_from_symbol(s, doubled));
    const double tol = 1e-4;
    if (!big.exists || std::abs(big.g0 - lim.g0) > 10.0 * tol * std::max(1.0, std::abs(lim.g0))) {
      out.converged = false;
    }
  }
  const double mismatch = std::abs(out.lhs * d0 * d0 - 1.0);
  out.regular = mismatch <= 1e-4;
  if (!out.regular) {
    out.reason = "g0 D(0)^2 differs from 1 by " + std::to_string(mismatch);
  }
  if (!out.converged) {
    out.reason += out.reason.empty() ? "" : "; ";
    out.reason += "truncation not converged between M and 2M";
  }
  return out;
}

}  // namespace cmvscat
