#include "cmvscat/scatter.hpp"

#include <cmath>

#include "cmvscat/error.hpp"
#include "cmvscat/kernels.hpp"

namespace cmvscat {

namespace {

// Keep only frequencies k >= 0 (positive) or k < 0 (negative).
CircleFunction riesz_part(const CircleFunction& f, bool positive) {
  const auto c = f.coeffs();
  const std::size_t n = c.size();
  std::vector<cplx> m(n, cplx{});
  for (std::size_t k = 0; k < n; ++k) {
    const bool is_positive = k < n / 2;
    if (is_positive == positive) m[k] = c.raw()[k];
  }
  return CircleFunction::from_coeffs(FourierCoeffs(f.grid(), std::move(m)));
}

}  // namespace

ScatteringData scatter_from_weight(const CircleFunction& w, cplx a_minus1) {
  auto R = herglotz_from_density(w);
  auto D = outer_from_modulus_squared(w);
  auto d_star = D.boundary().conj();
  auto s = (-a_minus1) * (D.boundary() / d_star);
  return {std::move(s), std::move(D), std::move(d_star), a_minus1, std::move(R), w};
}

ScatteringData forward_scatter(const VerblunskySeq& seq, const CircleGrid& grid) {
  auto R = schur_caratheodory(seq, grid);
  auto w = R.boundary().real();
  const auto& exact = R.exact();
  auto D = outer_from_weight_function(grid, [&exact](cplx t) { return exact(t).real(); });
  auto d_star = D.boundary().conj();
  const cplx am1 = seq.a_minus1();
  auto s = (-am1) * (D.boundary() / d_star);
  return {std::move(s), std::move(D), std::move(d_star), am1, std::move(R), std::move(w)};
}

PhiPsi phi_from_R(const DiskFunction& R, cplx a_minus1) {
  const cplx r0 = R.center();
  const auto& rb = R.boundary();
  const auto sum = r0 + rb;
  for (std::size_t j = 0; j < sum.size(); ++j) {
    if (std::abs(sum[j]) < 1e-300) throw NumericalFailure("R(0) + R vanishes on the grid");
  }
  auto phi_b = std::conj(a_minus1) * ((r0 - rb) / sum);
  // 1 - |phi|^2 = 4 Re(conj(R0) R) / |R0 + R|^2, without cancellation near |phi| = 1.
  std::vector<cplx> defect(rb.size());
  for (std::size_t j = 0; j < defect.size(); ++j) {
    defect[j] = 4.0 * (std::conj(r0) * rb[j]).real() / std::norm(sum[j]);
  }
  DiskFunction psi = [&] {
    if (!R.exact()) return outer_from_modulus_squared(CircleFunction(rb.grid(), std::move(defect)));
    const auto& exact = R.exact();
    return outer_from_weight_function(rb.grid(), [&exact, r0](cplx t) {
      const cplx r = exact(t);
      return 4.0 * (std::conj(r0) * r).real() / std::norm(r0 + r);
    });
  }();
  auto phi = DiskFunction::project(phi_b);
  std::vector<cplx> taylor(phi.coeffs().begin(), phi.coeffs().end());
  taylor[0] = 0.0;
  return {DiskFunction(DiskFunction::Side::Interior, std::move(taylor), phi_b), std::move(psi)};
}

KernelPair kernels_from_spectral(const DiskFunction& R, const DiskFunction& D, cplx a_minus1) {
  const cplx r0 = R.center();
  const double d0 = D.center().real();
  const auto& rb = R.boundary();
  const auto r_star = rb.conj();
  const auto& db = D.boundary();
  const auto d_star = db.conj();
  const auto t = CircleFunction::monomial(rb.grid(), 1);
  const double half = 0.5 / d0;

  auto k0_in = half * ((r0 + rb) / db);
  auto k0_out = (half * a_minus1) * ((r0 - r_star) / d_star);
  auto kinf_in = (half * std::conj(a_minus1)) * ((r0 - rb) / (t * db));
  auto kinf_out = half * ((r0 + r_star) / (t * d_star));
  auto in = DiskFunction::Side::Interior;
  auto out = DiskFunction::Side::Exterior;
  return {DiskFunction::project(k0_in, in), DiskFunction::project(k0_out, out),
          DiskFunction::project(kinf_in, in), DiskFunction::project(kinf_out, out)};
}

ScatterPair scatter_transform(const ScatteringData& data, const CircleFunction& f) {
  const auto wf = data.w * f;
  auto first = riesz_part(wf, true) / data.D.boundary();
  auto second = (-data.a_minus1) * (riesz_part(wf, false) / data.D_star);
  return {std::move(first), std::move(second)};
}

namespace {

cplx pair_inner(const CircleFunction& s, const CircleFunction& f1, const CircleFunction& f2,
                const CircleFunction& g1, const CircleFunction& g2) {
  const auto x = s * f1 + f2;
  const auto y = s * g1 + g2;
  return kernels::active().wdot(x.samples().data(), y.samples().data(), nullptr, x.size()) /
         static_cast<double>(x.size());
}

}  // namespace

cplx scatter_inner(const CircleFunction& s, const ScatterPair& f, const ScatterPair& g) {
  return pair_inner(s, f.first, f.second, g.first, g.second);
}

cplx scatter_inner(const CircleFunction& s, const ScatterPair& f, const DiskFunction& g_inner,
                   const DiskFunction& g_outer) {
  return pair_inner(s, f.first, f.second, g_inner.boundary(), g_outer.boundary());
}

std::vector<std::pair<double, double>> szego_asymptotics_residual(const ScatteringData& data,
                                                                  const LaurentBasis& basis,
                                                                  const std::vector<std::size_t>& n_list) {
  const auto& grid = data.s.grid();
  std::vector<std::pair<double, double>> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) {
    if (2 * n + 1 >= basis.functions.size()) throw ArgumentError("Laurent basis too short for n");
    const int k = static_cast<int>(n);
    const auto even = CircleFunction::monomial(grid, -k) * data.D_star * basis.functions[2 * n];
    const auto odd = CircleFunction::monomial(grid, k + 1) * data.D.boundary() * basis.functions[2 * n + 1];
    const double r_even = (even - CircleFunction::constant(grid, 1.0)).l2_norm();
    const double r_odd = (odd + CircleFunction::constant(grid, std::conj(data.a_minus1))).l2_norm();
    out.emplace_back(r_even, r_odd);
  }
  return out;
}

}  // namespace cmvscat
