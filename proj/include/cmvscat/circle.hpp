#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cmvscat/fft.hpp"

namespace cmvscat {

using cplx = std::complex<double>;

// Uniform grid of N-th roots of unity. Copies share one plan and node table.
class CircleGrid {
 public:
  static constexpr std::size_t kDefaultSize = 4096;

  explicit CircleGrid(std::size_t n = kDefaultSize);

  std::size_t size() const noexcept { return data_->nodes.size(); }
  cplx node(std::size_t j) const { return data_->nodes[j]; }
  std::span<const cplx> nodes() const noexcept { return data_->nodes; }
  const FftPlan& plan() const noexcept { return data_->plan; }
  double theta(std::size_t j) const;

  bool operator==(const CircleGrid& other) const noexcept { return size() == other.size(); }

 private:
  struct Data {
    explicit Data(std::size_t n);
    FftPlan plan;
    std::vector<cplx> nodes;
  };
  std::shared_ptr<const Data> data_;
};

// Fourier coefficients g^(k) = (1/N) sum_j g(t_j) t_j^{-k}, indexed by k in (-N/2, N/2].
class FourierCoeffs {
 public:
  FourierCoeffs(CircleGrid grid, std::vector<cplx> fft_order);

  const CircleGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return c_.size(); }
  int min_index() const noexcept { return -static_cast<int>(size() / 2) + 1; }
  int max_index() const noexcept { return static_cast<int>(size() / 2); }
  // Throws ArgumentError outside (-N/2, N/2].
  cplx operator[](int k) const;
  // Coefficients in FFT storage order (index k mod N).
  std::span<const cplx> raw() const noexcept { return c_; }

 private:
  CircleGrid grid_;
  std::vector<cplx> c_;
};

class CircleFunction {
 public:
  CircleFunction(CircleGrid grid, std::vector<cplx> samples);

  static CircleFunction constant(const CircleGrid& grid, cplx value);
  static CircleFunction monomial(const CircleGrid& grid, int power);
  static CircleFunction from_coeffs(const FourierCoeffs& coeffs);
  template <class F>
  static CircleFunction tabulate(const CircleGrid& grid, F&& f) {
    std::vector<cplx> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(j));
    return {grid, std::move(v)};
  }

  const CircleGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return samples_.size(); }
  cplx operator[](std::size_t j) const { return samples_[j]; }
  std::span<const cplx> samples() const noexcept { return samples_; }

  FourierCoeffs coeffs() const;

  double max_imag() const;
  double sup_norm() const;
  // sqrt((1/N) sum |g|^2)
  double l2_norm() const;
  cplx mean() const;

  CircleFunction conj() const;
  CircleFunction real() const;
  CircleFunction abs2() const;
  CircleFunction scaled(cplx c) const;

 private:
  CircleGrid grid_;
  std::vector<cplx> samples_;
};

CircleFunction operator+(const CircleFunction& x, const CircleFunction& y);
CircleFunction operator-(const CircleFunction& x, const CircleFunction& y);
CircleFunction operator*(const CircleFunction& x, const CircleFunction& y);
CircleFunction operator/(const CircleFunction& x, const CircleFunction& y);
CircleFunction operator*(cplx c, const CircleFunction& x);
CircleFunction operator+(cplx c, const CircleFunction& x);
CircleFunction operator-(cplx c, const CircleFunction& x);

inline FourierCoeffs fourier_coeffs(const CircleFunction& f) { return f.coeffs(); }

struct Conditioning {
  std::vector<std::size_t> clamped_nodes;
  // grid refinement used by outer_from_weight_function, and whether it settled
  std::size_t oversampling = 1;
  bool settled = true;
  bool clamped() const noexcept { return !clamped_nodes.empty(); }
};

// Pointwise boundary values on the circle, when a closed form is available.
using BoundaryFn = std::function<cplx(cplx)>;

// Analytic function in |z| < 1 (Interior, f = sum_k c_k z^k) or in |z| > 1
// (Exterior, f = sum_k c_k z^{-k}), k < N/2, together with its boundary values.
class DiskFunction {
 public:
  enum class Side { Interior, Exterior };

  DiskFunction(Side side, std::vector<cplx> coeffs, CircleFunction boundary,
               Conditioning conditioning = {}, BoundaryFn exact = {});

  // Analytic projection of boundary data: k >= 0 (Interior) or k <= 0 (Exterior).
  static DiskFunction project(const CircleFunction& f, Side side = Side::Interior);

  Side side() const noexcept { return side_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  const CircleFunction& boundary() const noexcept { return boundary_; }
  const Conditioning& conditioning() const noexcept { return conditioning_; }
  // Empty unless the producer can evaluate boundary values off the grid.
  const BoundaryFn& exact() const noexcept { return exact_; }
  // Value at 0 (Interior) or at infinity (Exterior).
  cplx center() const { return coeffs_.empty() ? cplx{} : coeffs_[0]; }
  // Horner evaluation of the truncated series.
  cplx operator()(cplx z) const;

 private:
  Side side_;
  std::vector<cplx> coeffs_;
  CircleFunction boundary_;
  Conditioning conditioning_;
  BoundaryFn exact_;
};

inline constexpr double kClampThreshold = 1e-14;
inline constexpr double kClampFloor = 1e-300;

// Fourier multiplier -i sign(k); zero at k = 0 and at the Nyquist index.
CircleFunction conjugate_function(const CircleFunction& u);

// Outer O with |O|^2 = w on the grid and O(0) = exp(mean(log w)/2) > 0.
DiskFunction outer_from_modulus_squared(const CircleFunction& w);

// Same, for a weight known pointwise: the log-domain construction is repeated
// on grids of 2N, 4N, ... (up to max_factor N) until the values on the base
// nodes change by less than 1e-13 relative, then sampled back to the grid.
DiskFunction outer_from_weight_function(const CircleGrid& grid, const std::function<double(cplx)>& w,
                                        std::size_t max_factor = 16);

// R with Re R = w on the circle and R(0) = w^(0).
DiskFunction herglotz_from_density(const CircleFunction& w);

// Poisson extension: values of sum_k g^(k) r^|k| t_j^k.
CircleFunction harmonic_extension(const CircleFunction& f, double r);

}  // namespace cmvscat
