#include "cmvscat/fft.hpp"

#include <bit>
#include <numbers>

#include "cmvscat/error.hpp"
#include "cmvscat/kernels.hpp"

namespace cmvscat {

FftPlan::FftPlan(std::size_t n) : n_(n), bitrev_(n), twiddles_(n > 0 ? n - 1 : 0) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw ArgumentError("FFT length must be a power of two >= 2");
  }
  const int bits = std::countr_zero(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((j >> b) & 1u) << (bits - 1 - b);
    bitrev_[j] = r;
  }
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t j = 0; j < h; ++j) {
      const double angle = -std::numbers::pi * static_cast<double>(j) / static_cast<double>(h);
      twiddles_[h - 1 + j] = std::polar(1.0, angle);
    }
  }
}

void FftPlan::transform(std::span<std::complex<double>> x) const {
  if (x.size() != n_) throw ArgumentError("FFT input length does not match plan");
  for (std::size_t j = 0; j < n_; ++j) {
    if (j < bitrev_[j]) std::swap(x[j], x[bitrev_[j]]);
  }
  const auto& k = kernels::active();
  for (std::size_t h = 1; h < n_; h *= 2) {
    const std::complex<double>* tw = twiddles_.data() + (h - 1);
    for (std::size_t i = 0; i < n_; i += 2 * h) k.butterfly(&x[i], &x[i + h], tw, h);
  }
}

void FftPlan::forward(std::span<std::complex<double>> data) const { transform(data); }

void FftPlan::inverse(std::span<std::complex<double>> data) const {
  for (auto& v : data) v = std::conj(v);
  transform(data);
  for (auto& v : data) v = std::conj(v);
}

}  // namespace cmvscat
