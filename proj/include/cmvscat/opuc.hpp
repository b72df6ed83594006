#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cmvscat/circle.hpp"

namespace cmvscat {

// a_{-1} (unimodular) plus a_0..a_{M-1} in the open disk; a_k = 0 beyond.
class VerblunskySeq {
 public:
  VerblunskySeq() = default;
  VerblunskySeq(cplx a_minus1, std::vector<cplx> a);

  cplx a_minus1() const noexcept { return a_minus1_; }
  const std::vector<cplx>& coeffs() const noexcept { return a_; }
  std::size_t support() const noexcept { return a_.size(); }
  cplx a(std::size_t k) const noexcept { return k < a_.size() ? a_[k] : cplx{}; }
  double rho(std::size_t k) const;
  // Parameter of the Schur recursion for the measure of e_0: -a_{-1} conj(a_k).
  cplx schur_parameter(std::size_t k) const noexcept { return -a_minus1_ * std::conj(a(k)); }
  // prod_{k < n} rho_k
  double rho_product(std::size_t n) const;
  // prod_k rho_k over the support (= D(0) for finitely supported sequences)
  double rho_product() const { return rho_product(a_.size()); }

 private:
  cplx a_minus1_{-1.0, 0.0};
  std::vector<cplx> a_;
};

struct CmvMatrix {
  Eigen::MatrixXcd entries;
  Eigen::Index dim() const noexcept { return entries.rows(); }
};

// Leading n x n truncation of A1 A0.
CmvMatrix build_cmv(const VerblunskySeq& seq, Eigen::Index n);

// max |(C*C - I)_{ij}| over i, j < n - 3 (columns untouched by the truncation edge).
double unitarity_residual(const CmvMatrix& c);

// Max residual of the two three-term identities generating e_n from e_0.
double cmv_recursion_check(const VerblunskySeq& seq, Eigen::Index n);

// Caratheodory function R = (1 + z f)/(1 - z f) of the Schur function f from
// the backward recursion; R(0) = 1.
DiskFunction schur_caratheodory(const VerblunskySeq& seq, const CircleGrid& grid);

// w = Re R on the grid.
CircleFunction spectral_density(const VerblunskySeq& seq, const CircleGrid& grid);

struct LaurentBasis {
  std::vector<CircleFunction> functions;
  // Leading coefficients: of t^n for P_{2n}, of t^{-(n+1)} for P_{2n+1}.
  std::vector<cplx> leading;
};

// P_0..P_{m-1} via the alternating three-term recursion. Norms and adjacent
// inner products under w dm are checked; loss beyond 1e-6 is a NumericalFailure.
LaurentBasis laurent_basis(const VerblunskySeq& seq, std::size_t m, const CircleFunction& w);

// G_ij = integral P_i conj(P_j) w dm.
Eigen::MatrixXcd gram_matrix(const LaurentBasis& basis, const CircleFunction& w);

}  // namespace cmvscat
