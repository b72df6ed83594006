#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/hankel.hpp"
#include "cmvscat/opuc.hpp"

namespace cmvscat {

struct RecoveryReport {
  VerblunskySeq seq;
  std::vector<double> rho;
  // | |a_n|^2 + rho_n^2 - 1 |
  std::vector<double> consistency;
  double residual = 0.0;
  // std-dev over the grid of the unimodular ratio -s D~_*/D~ (should be constant)
  double a_minus1_spread = 0.0;
  double sigma_max = 0.0;
  bool regular = false;
  std::vector<std::string> warnings;
};

// Reads a_0..a_{n_max} and rho_0..rho_{n_max} off the shifted Hankel operators
// of s at order M, then fixes a_{-1} from the forward map of the result.
// Requires M >= n_max + 64 and sigma_max < 1 - 1e-8 (NotRegularError otherwise).
RecoveryReport recover_verblunsky(const CircleFunction& s, std::size_t n_max, Eigen::Index order);

struct GlmMatrix {
  // Lower triangular; rows/columns in the order 1, 1/z, z, 1/z^2, ...
  Eigen::MatrixXcd entries;
  Eigen::Index order() const noexcept { return entries.rows(); }
};

GlmMatrix glm_matrix(const FourierCoeffs& s, cplx a_minus1, Eigen::Index m, Eigen::Index order);
GlmMatrix glm_matrix(const VerblunskySeq& seq, Eigen::Index m, Eigen::Index order,
                     const CircleGrid& grid = CircleGrid());

// Leading m x m block of U*[[I, H*],[H, I]]^{-1} U with U e_{2n} = t^n (+) 0,
// U e_{2n+1} = 0 (+) t^{-n-1}.
Eigen::MatrixXcd glm_gram_block(const FourierCoeffs& s, Eigen::Index m, Eigen::Index order);

// Relative Frobenius distance between the block above and M M*.
double glm_factorization_residual(const FourierCoeffs& s, cplx a_minus1, Eigen::Index m, Eigen::Index order);
double glm_factorization_residual(const VerblunskySeq& seq, Eigen::Index m, Eigen::Index order,
                                  const CircleGrid& grid = CircleGrid());

// Lower-triangular L with (I - H*H)^{-1} = L L*; diagonal L_nn = 1/(rho_n rho_{n+1} ...).
Eigen::MatrixXcd l_matrix(const FourierCoeffs& s, Eigen::Index m, Eigen::Index order);
// Relative Frobenius distance between the leading m-block of (I - H*H)^{-1} and L L*.
double l_factorization_residual(const FourierCoeffs& s, Eigen::Index m, Eigen::Index order);

}  // namespace cmvscat
