#include "cmvscat/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmvscat/error.hpp"
#include "cmvscat/kernels.hpp"

namespace cmvscat {

namespace {

cplx exact_root(std::size_t j, std::size_t n) {
  // Quarter points are placed exactly so that t^{N/4} = i etc. hold bitwise.
  if (j == 0) return {1.0, 0.0};
  if (4 * j == n) return {0.0, 1.0};
  if (2 * j == n) return {-1.0, 0.0};
  if (4 * j == 3 * n) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void require_same_grid(const CircleFunction& x, const CircleFunction& y) {
  if (!(x.grid() == y.grid())) throw ArgumentError("circle functions live on different grids");
}

// Forward coefficients of real log-data with k > 0 doubled into an analytic log.
std::vector<cplx> analytic_log_coeffs(const FourierCoeffs& c) {
  const std::size_t n = c.size();
  std::vector<cplx> out(n, cplx{});
  out[0] = c.raw()[0] / 2.0;
  for (std::size_t k = 1; k < n / 2; ++k) out[k] = c.raw()[k];
  out[n / 2] = c.raw()[n / 2] / 2.0;
  return out;
}

}  // namespace

CircleGrid::Data::Data(std::size_t n) : plan(n), nodes(n) {
  for (std::size_t j = 0; j < n; ++j) nodes[j] = exact_root(j, n);
}

CircleGrid::CircleGrid(std::size_t n) {
  if (n < 16 || (n & (n - 1)) != 0) throw ArgumentError("grid size must be a power of two >= 16");
  data_ = std::make_shared<const Data>(n);
}

double CircleGrid::theta(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(size());
}

FourierCoeffs::FourierCoeffs(CircleGrid grid, std::vector<cplx> fft_order)
    : grid_(std::move(grid)), c_(std::move(fft_order)) {
  if (c_.size() != grid_.size()) throw ArgumentError("coefficient count does not match grid");
}

cplx FourierCoeffs::operator[](int k) const {
  if (k < min_index() || k > max_index()) throw ArgumentError("Fourier index out of range");
  const auto n = static_cast<int>(size());
  return c_[static_cast<std::size_t>((k % n + n) % n)];
}

CircleFunction::CircleFunction(CircleGrid grid, std::vector<cplx> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw ArgumentError("sample count does not match grid");
}

CircleFunction CircleFunction::constant(const CircleGrid& grid, cplx value) {
  return {grid, std::vector<cplx>(grid.size(), value)};
}

CircleFunction CircleFunction::monomial(const CircleGrid& grid, int power) {
  const auto n = static_cast<long>(grid.size());
  std::vector<cplx> v(grid.size());
  for (long j = 0; j < n; ++j) {
    const long idx = ((j * power) % n + n) % n;
    v[static_cast<std::size_t>(j)] = grid.node(static_cast<std::size_t>(idx));
  }
  return {grid, std::move(v)};
}

CircleFunction CircleFunction::from_coeffs(const FourierCoeffs& coeffs) {
  std::vector<cplx> v(coeffs.raw().begin(), coeffs.raw().end());
  coeffs.grid().plan().inverse(v);
  return {coeffs.grid(), std::move(v)};
}

FourierCoeffs CircleFunction::coeffs() const {
  // g^(k) = (1/N) sum_j g_j t_j^{-k} is the forward DFT scaled by 1/N.
  std::vector<cplx> c = samples_;
  grid_.plan().forward(c);
  const double inv = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= inv;
  return {grid_, std::move(c)};
}

double CircleFunction::max_imag() const {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::abs(v.imag()));
  return m;
}

double CircleFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double CircleFunction::l2_norm() const {
  const auto& k = kernels::active();
  const cplx s = k.wdot(samples_.data(), samples_.data(), nullptr, samples_.size());
  return std::sqrt(s.real() / static_cast<double>(samples_.size()));
}

cplx CircleFunction::mean() const {
  cplx acc{};
  for (const auto& v : samples_) acc += v;
  return acc / static_cast<double>(samples_.size());
}

CircleFunction CircleFunction::conj() const {
  std::vector<cplx> v(samples_.size());
  std::transform(samples_.begin(), samples_.end(), v.begin(), [](cplx x) { return std::conj(x); });
  return {grid_, std::move(v)};
}

CircleFunction CircleFunction::real() const {
  std::vector<cplx> v(samples_.size());
  std::transform(samples_.begin(), samples_.end(), v.begin(), [](cplx x) { return cplx{x.real(), 0.0}; });
  return {grid_, std::move(v)};
}

CircleFunction CircleFunction::abs2() const {
  std::vector<cplx> v(samples_.size());
  std::transform(samples_.begin(), samples_.end(), v.begin(), [](cplx x) { return cplx{std::norm(x), 0.0}; });
  return {grid_, std::move(v)};
}

CircleFunction CircleFunction::scaled(cplx c) const {
  std::vector<cplx> v(samples_.size());
  std::transform(samples_.begin(), samples_.end(), v.begin(), [c](cplx x) { return c * x; });
  return {grid_, std::move(v)};
}

CircleFunction operator+(const CircleFunction& x, const CircleFunction& y) {
  require_same_grid(x, y);
  std::vector<cplx> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = x[j] + y[j];
  return {x.grid(), std::move(v)};
}

CircleFunction operator-(const CircleFunction& x, const CircleFunction& y) {
  require_same_grid(x, y);
  std::vector<cplx> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = x[j] - y[j];
  return {x.grid(), std::move(v)};
}

CircleFunction operator*(const CircleFunction& x, const CircleFunction& y) {
  require_same_grid(x, y);
  std::vector<cplx> v(x.size());
  kernels::active().mul(x.samples().data(), y.samples().data(), v.data(), v.size());
  return {x.grid(), std::move(v)};
}

CircleFunction operator/(const CircleFunction& x, const CircleFunction& y) {
  require_same_grid(x, y);
  std::vector<cplx> v(x.size());
  kernels::active().div(x.samples().data(), y.samples().data(), v.data(), v.size());
  return {x.grid(), std::move(v)};
}

CircleFunction operator*(cplx c, const CircleFunction& x) { return x.scaled(c); }

CircleFunction operator+(cplx c, const CircleFunction& x) {
  std::vector<cplx> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = c + x[j];
  return {x.grid(), std::move(v)};
}

CircleFunction operator-(cplx c, const CircleFunction& x) {
  std::vector<cplx> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = c - x[j];
  return {x.grid(), std::move(v)};
}

DiskFunction::DiskFunction(Side side, std::vector<cplx> coeffs, CircleFunction boundary,
                           Conditioning conditioning, BoundaryFn exact)
    : side_(side),
      coeffs_(std::move(coeffs)),
      boundary_(std::move(boundary)),
      conditioning_(std::move(conditioning)),
      exact_(std::move(exact)) {
  if (coeffs_.size() > boundary_.size() / 2) throw ArgumentError("Taylor list longer than N/2");
}

DiskFunction DiskFunction::project(const CircleFunction& f, Side side) {
  const auto c = f.coeffs();
  const std::size_t half = f.size() / 2;
  std::vector<cplx> taylor(half);
  for (std::size_t k = 0; k < half; ++k) {
    const int idx = side == Side::Interior ? static_cast<int>(k) : -static_cast<int>(k);
    taylor[k] = c[idx];
  }
  return {side, std::move(taylor), f};
}

cplx DiskFunction::operator()(cplx z) const {
  const cplx x = side_ == Side::Interior ? z : 1.0 / z;
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

CircleFunction conjugate_function(const CircleFunction& u) {
  if (u.max_imag() > 1e-10) throw DomainError("conjugate_function needs a real-valued input");
  const auto c = u.real().coeffs();
  const std::size_t n = c.size();
  std::vector<cplx> m(n, cplx{});
  const cplx minus_i{0.0, -1.0};
  for (std::size_t k = 1; k < n / 2; ++k) {
    m[k] = minus_i * c.raw()[k];
    m[n - k] = -minus_i * c.raw()[n - k];
  }
  auto v = CircleFunction::from_coeffs(FourierCoeffs(u.grid(), std::move(m)));
  return v.real();
}

DiskFunction outer_from_modulus_squared(const CircleFunction& w) {
  Conditioning cond;
  std::vector<cplx> logw(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double x = w[j].real();
    if (!(x >= -1e-12) || std::abs(w[j].imag()) > 1e-10 * std::max(1.0, std::abs(x))) {
      throw DomainError("outer function needs a nonnegative real weight");
    }
    if (x < kClampThreshold) cond.clamped_nodes.push_back(j);
    logw[j] = std::log(std::max(x, kClampFloor));
  }
  const auto lc = CircleFunction(w.grid(), std::move(logw)).coeffs();
  auto half = analytic_log_coeffs(lc);
  const cplx log_center = half[0];
  auto logo = CircleFunction::from_coeffs(FourierCoeffs(w.grid(), half));
  std::vector<cplx> o(w.size());
  for (std::size_t j = 0; j < o.size(); ++j) o[j] = std::exp(logo[j]);
  CircleFunction boundary(w.grid(), std::move(o));
  const auto proj = DiskFunction::project(boundary);
  std::vector<cplx> t(proj.coeffs().begin(), proj.coeffs().end());
  t[0] = std::exp(log_center.real());
  return {DiskFunction::Side::Interior, std::move(t), std::move(boundary), std::move(cond)};
}

DiskFunction outer_from_weight_function(const CircleGrid& grid, const std::function<double(cplx)>& w,
                                        std::size_t max_factor) {
  const std::size_t n = grid.size();
  auto at = [&](const CircleGrid& g) {
    std::vector<cplx> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = w(g.node(j));
    return outer_from_modulus_squared(CircleFunction(g, std::move(v)));
  };
  DiskFunction current = at(grid);
  std::size_t factor = 1;
  bool settled = false;
  while (factor < max_factor) {
    const std::size_t next = factor * 2;
    const CircleGrid fine(n * next);
    DiskFunction refined = at(fine);
    std::vector<cplx> base(n);
    for (std::size_t j = 0; j < n; ++j) base[j] = refined.boundary()[j * next];
    CircleFunction sampled(grid, std::move(base));
    const double change = (sampled - current.boundary()).sup_norm();
    const double scale = sampled.sup_norm();
    // Taylor coefficients below N/2 from the fine grid are free of the base-grid aliasing.
    std::vector<cplx> taylor(refined.coeffs().begin(), refined.coeffs().begin() + static_cast<long>(n / 2));
    Conditioning cond;
    for (std::size_t j : refined.conditioning().clamped_nodes) {
      if (j % next == 0) cond.clamped_nodes.push_back(j / next);
    }
    cond.oversampling = next;
    current = DiskFunction(DiskFunction::Side::Interior, std::move(taylor), std::move(sampled), std::move(cond));
    factor = next;
    if (change <= 1e-13 * scale) {
      settled = true;
      break;
    }
  }
  if (max_factor <= 1) settled = true;
  Conditioning cond = current.conditioning();
  cond.settled = settled;
  std::vector<cplx> taylor(current.coeffs().begin(), current.coeffs().end());
  return {DiskFunction::Side::Interior, std::move(taylor), current.boundary(), std::move(cond)};
}

DiskFunction herglotz_from_density(const CircleFunction& w) {
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j].real() < -1e-12) throw DomainError("spectral density has a negative sample");
  }
  const auto c = w.real().coeffs();
  const std::size_t n = c.size();
  std::vector<cplx> full(n, cplx{});
  full[0] = c.raw()[0];
  for (std::size_t k = 1; k < n / 2; ++k) full[k] = 2.0 * c.raw()[k];
  full[n / 2] = c.raw()[n / 2];
  std::vector<cplx> taylor(full.begin(), full.begin() + static_cast<long>(n / 2));
  auto boundary = CircleFunction::from_coeffs(FourierCoeffs(w.grid(), std::move(full)));
  return {DiskFunction::Side::Interior, std::move(taylor), std::move(boundary)};
}

CircleFunction harmonic_extension(const CircleFunction& f, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("radius must lie in (0, 1]");
  const auto c = f.coeffs();
  const std::size_t n = c.size();
  std::vector<cplx> m(c.raw().begin(), c.raw().end());
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double damp = std::pow(r, static_cast<double>(k));
    m[k] *= damp;
    if (k != n / 2) m[n - k] *= damp;
  }
  return CircleFunction::from_coeffs(FourierCoeffs(f.grid(), std::move(m)));
}

}  // namespace cmvscat
