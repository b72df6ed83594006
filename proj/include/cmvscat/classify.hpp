#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/hankel.hpp"
#include "cmvscat/opuc.hpp"

namespace cmvscat {

// A partial sum over a window and over half that window. The sum is called
// divergent when doubling the window adds more than 10%.
struct WindowedSum {
  double value = 0.0;
  double half_window = 0.0;
  bool divergent() const noexcept { return value > 1.1 * half_window && value > 1e-300; }
};

// sum_k |k| |c_k|^2 over |k| < N/2, and over |k| <= N/4.
WindowedSum besov_half_norm(const FourierCoeffs& c);
// sum_{1 <= m <= window} m |c_{-m}|^2
double besov_negative(const FourierCoeffs& c, int window);

// sum_k |a_k|^2 and sum_k k |a_k|^2 over the support and over its first half.
WindowedSum szego_sum(const VerblunskySeq& seq);
WindowedSum gi_sum(const VerblunskySeq& seq);

struct WindingResult {
  int index;
  double radius;
  double min_modulus;
};

inline constexpr double kOuterWindingRadius = 0.999;

// r, (1 + r)/2, ... up to kOuterWindingRadius.
std::vector<double> winding_radii(double r);

// Winding number of the Poisson extension of s on |z| = rho, taken at the
// largest rho in winding_radii(r) where the extension stays 0.1 away from zero.
// If it comes near zero at all of them, 0.9 and 0.8 are tried.
WindingResult winding_index(const CircleFunction& s, double r = 0.95);

// max over dyadic arcs (N/2 down to 8 nodes, every cyclic translate) of
// <w>_I <1/w>_I with node means.
double a2_constant(const CircleFunction& w);

struct WidomRow {
  Eigen::Index order;
  double det;
  double product;
  double gap;
};

// det(I - H_M* H_M) against prod_n rho_n^{2(n+1)} for each M.
std::vector<WidomRow> widom_det(const VerblunskySeq& seq, const std::vector<Eigen::Index>& orders,
                                const CircleGrid& grid = CircleGrid());

struct ClassInput {
  std::optional<VerblunskySeq> seq;
  std::optional<CircleFunction> s;
  std::optional<double> d0;
  std::size_t grid_size = CircleGrid::kDefaultSize;
  Eigen::Index order = 256;
  double radius = 0.95;
  // recovery depth when only s is supplied
  std::size_t recover_depth = 16;
};

struct ClassReport {
  WindowedSum szego;
  WindowedSum gi;
  WindowedSum besov;
  int index = 0;
  double winding_radius = 0.0;
  double a2_constant = 0.0;
  double a2_coarse = 0.0;
  bool a2_stable = false;
  double inverse_weight = 0.0;
  bool inverse_weight_stable = false;
  double hankel_norm = 0.0;
  RegularityResult regularity{};
  std::optional<double> recovery_residual;
  std::optional<double> glm_column_norm;
  bool regular = false;
  bool hs_member = false;
  bool gi_member = false;
  std::vector<std::string> diagnostics;
};

ClassReport classify(const ClassInput& in);

}  // namespace cmvscat
