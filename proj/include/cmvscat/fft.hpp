#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cmvscat {

// In-place radix-2 transform for a fixed power-of-two length.
// forward: X_k = sum_j x_j exp(-2 pi i jk/n); inverse omits the 1/n factor.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  void transform(std::span<std::complex<double>> data) const;

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  // Stage with half-length h stores exp(-2 pi i j/(2h)), j < h, at offset h - 1.
  std::vector<std::complex<double>> twiddles_;
};

}  // namespace cmvscat
