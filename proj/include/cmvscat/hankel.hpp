#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cmvscat/circle.hpp"

namespace cmvscat {

// M x M truncation of the Hankel operator F -> P_-(s F), basis t^j of H^2 and
// t^{-(k+1)} of H^2_-: H[k][j] = s^(-(k + j + 1 + shift)). shift = n realizes s t^n.
class HankelOp {
 public:
  HankelOp(std::vector<cplx> negative_coeffs, Eigen::Index order, Eigen::Index shift = 0);

  Eigen::Index order() const noexcept { return order_; }
  Eigen::Index shift() const noexcept { return shift_; }
  // negative_coeffs()[m] = s^(-(m + 1))
  const std::vector<cplx>& negative_coeffs() const noexcept { return neg_; }
  cplx entry(Eigen::Index k, Eigen::Index j) const {
    return neg_[static_cast<std::size_t>(k + j + shift_)];
  }
  Eigen::MatrixXcd matrix() const;
  // Operator of s t^n at the same order.
  HankelOp shifted(Eigen::Index n) const { return {neg_, order_, shift_ + n}; }
  HankelOp with_order(Eigen::Index m) const { return {neg_, m, shift_}; }

 private:
  std::vector<cplx> neg_;
  Eigen::Index order_;
  Eigen::Index shift_;
};

// Uses s^(-1) .. s^(-(N/2 - 1)); requires M <= N/4.
HankelOp hankel_from_symbol(const FourierCoeffs& s, Eigen::Index order);

double sigma_max(const HankelOp& h);

enum class BlockRhs { UnitH2, UnitH2Minus };

struct BlockSolve {
  Eigen::VectorXcd x;
  double residual;
  double condition;
};

// (I - r^2 H*H)^{-1} 1 or (I - r^2 HH*)^{-1} t_bar by Cholesky. At r = 1 a
// sigma_max >= 1 - 1e-10 raises NearSingularError; sigma may be supplied.
BlockSolve solve_block(const HankelOp& h, BlockRhs rhs, double r = 1.0,
                       std::optional<double> sigma = std::nullopt);

struct AakData {
  Eigen::VectorXcd g;
  Eigen::VectorXcd h;
  double psi0;
  DiskFunction psi;
  DiskFunction phi;
};

// psi_H = 1/(psi_H(0) g(z)), psi_H(0) = 1/sqrt(g_0); phi_H = z (-H* h)(z) / g(z).
AakData aak_data(const HankelOp& h, const CircleGrid& grid);
DiskFunction psi_h(const HankelOp& h, const CircleGrid& grid);
DiskFunction phi_h(const HankelOp& h, const CircleGrid& grid);

struct LimitSolve {
  bool exists;
  double g0;
  double sigma_max;
  // (r, g0(r)) when the limit r -> 1 is taken by sweep
  std::vector<std::pair<double, double>> sweep;
};

// lim_{r -> 1} <(I - r^2 H*H)^{-1} 1, 1>.
LimitSolve limit_point_evaluation(const HankelOp& h);

struct RegularityResult {
  bool regular;
  double lhs;
  double rhs;
  double sigma_max;
  bool converged;
  std::string reason;
};

// regular <=> |g_0 D(0)^2 - 1| <= 1e-4 and sigma_max < 1 - 1e-8. The result at
// order M is compared with order 2M when the symbol has enough coefficients.
RegularityResult regularity_test(const FourierCoeffs& s, double d0, Eigen::Index order);

}  // namespace cmvscat
