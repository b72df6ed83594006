#include <cmath>

#include "cmvscat/error.hpp"
#include "cmvscat/scatter.hpp"
#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cmvscat;

namespace {

const CircleGrid& grid() {
  static const CircleGrid g(4096);
  return g;
}

}  // namespace

TEST_CASE("forward_scatter free case") {
  const auto d = forward_scatter(VerblunskySeq({-1.0, 0.0}, {}), grid());
  CHECK((d.s - CircleFunction::constant(grid(), 1.0)).sup_norm() < 1e-15);
  CHECK(d.D0() == 1.0);
}

TEST_CASE("forward_scatter closed forms for a = (1/2), a_{-1} = 1") {
  const auto& g = grid();
  const auto d = forward_scatter(VerblunskySeq({1.0, 0.0}, {0.5}), g);
  const double c = std::sqrt(3.0) / 2.0;
  const auto D = CircleFunction::tabulate(g, [c](cplx t) { return c / (1.0 + t / 2.0); });
  const auto s = CircleFunction::tabulate(g, [](cplx t) { return -(t + 0.5) / (t * (1.0 + t / 2.0)); });
  CHECK((d.D.boundary() - D).sup_norm() < 1e-13);
  CHECK((d.D_star - D.conj()).sup_norm() < 1e-13);
  CHECK((d.s - s).sup_norm() < 1e-13);
  CHECK(std::abs(d.D0() - c) < 1e-15);
  // s = -(t + 1/2)/(t (1 + t/2)): the t^{-1} coefficient is -1/2
  const auto sc = d.s.coeffs();
  CHECK(std::abs(sc[-1] + 0.5) < 1e-14);
  for (int k = 1; k < 50; ++k) CHECK(std::abs(sc[k] - oracle::direct_coeff(oracle::samples(s), k)) < 1e-13);
}

TEST_CASE("unimodularity and s D_* + a_{-1} D = 0 across the corpus") {
  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const auto d = forward_scatter(seq, grid());
    double unimod = 0.0;
    for (std::size_t j = 0; j < d.s.size(); ++j) unimod = std::max(unimod, std::abs(std::abs(d.s[j]) - 1.0));
    CHECK(unimod < 1e-8);
    CHECK((d.s * d.D_star + d.a_minus1 * d.D.boundary()).sup_norm() < 1e-8);
    // D(0) = prod rho_k for finitely supported sequences
    CHECK(std::abs(d.D0() - seq.rho_product()) < 1e-12);
    CHECK((d.D.boundary().abs2() - d.w).sup_norm() < 1e-8 * d.w.sup_norm());
  }
}

TEST_CASE("D matches the closed-form outer function across the corpus") {
  const auto& g = grid();
  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const auto d = forward_scatter(seq, g);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      err = std::max(err, std::abs(d.D.boundary()[j] - oracle::bernstein_szego_D(seq, g.node(j))));
    }
    CHECK(err < 1e-12);
    CHECK(std::abs(d.D(cplx(0.3, -0.4)) - oracle::bernstein_szego_D(seq, cplx(0.3, -0.4))) < 1e-12);
    CHECK(d.D.conditioning().settled);
  }
}

TEST_CASE("changing a_{-1} multiplies s by a unimodular constant") {
  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const cplx lambda = std::polar(1.0, -0.77);
    std::vector<cplx> a(seq.coeffs());
    for (auto& x : a) x *= lambda;
    const auto d1 = forward_scatter(seq, grid());
    const auto d2 = forward_scatter(VerblunskySeq(lambda * seq.a_minus1(), a), grid());
    CHECK((d2.s - lambda * d1.s).sup_norm() < 1e-12);
    const auto c1 = d1.s.coeffs(), c2 = d2.s.coeffs();
    for (int k = -100; k <= 100; ++k) CHECK(std::abs(std::abs(c1[k]) - std::abs(c2[k])) < 1e-13);
  }
}

TEST_CASE("Jacobi sequence with a_{-1} = -1 has s close to t^2 away from t = 1") {
  const auto& g = grid();
  auto dist = [&](std::size_t length) {
    const auto d = forward_scatter(testing::jacobi_sequence(2.0, 0.0, length), g);
    const auto diff = d.s - CircleFunction::monomial(g, 2);
    double m = 0.0;
    for (std::size_t j = g.size() / 8; j <= 7 * g.size() / 8; ++j) m = std::max(m, std::abs(diff[j]));
    return m;
  };
  const double d200 = dist(200), d800 = dist(800);
  MESSAGE("sup |s - t^2| on |theta| >= pi/4: L=200 " << d200 << ", L=800 " << d800);
  CHECK(d200 < 0.1);
  CHECK(d800 < 0.5 * d200);
}

TEST_CASE("phi_from_R examples") {
  const auto& g = grid();
  const auto unit = herglotz_from_density(CircleFunction::constant(g, 1.0));
  const auto pp0 = phi_from_R(unit, {1.0, 0.0});
  CHECK(pp0.phi.boundary().sup_norm() < 1e-15);
  CHECK((pp0.psi.boundary() - CircleFunction::constant(g, 1.0)).sup_norm() < 1e-14);

  // a = (1/2), a_{-1} = 1: phi = z/2
  const VerblunskySeq half({1.0, 0.0}, {0.5});
  const auto d = forward_scatter(half, g);
  const auto pp = phi_from_R(d.R, half.a_minus1());
  CHECK((pp.phi.boundary() - 0.5 * CircleFunction::monomial(g, 1)).sup_norm() < 1e-14);
  CHECK(std::abs(pp.psi.center() - std::sqrt(0.75)) < 1e-14);
  const auto nado = pp.psi.boundary() / (1.0 + half.a_minus1() * pp.phi.boundary());
  CHECK((nado - d.D.boundary()).sup_norm() < 1e-8);

  // |1 - t|^4 / 6
  const auto w = CircleFunction::tabulate(g, [](cplx t) { return cplx{std::pow(std::abs(1.0 - t), 4) / 6.0, 0.0}; });
  const auto pq = phi_from_R(herglotz_from_density(w), {1.0, 0.0});
  CHECK(std::abs(pq.phi.center()) < 1e-10);
  CHECK((pq.phi.boundary().abs2() + pq.psi.boundary().abs2() - CircleFunction::constant(g, 1.0)).sup_norm() < 1e-8);
}

TEST_CASE("phi/psi invariants across the corpus") {
  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const auto d = forward_scatter(seq, grid());
    const auto pp = phi_from_R(d.R, seq.a_minus1());
    CHECK((pp.phi.boundary().abs2() + pp.psi.boundary().abs2() - CircleFunction::constant(grid(), 1.0)).sup_norm() < 1e-8);
    CHECK(pp.phi.boundary().sup_norm() <= 1.0 + 1e-8);
    CHECK(std::abs(pp.phi.boundary().coeffs()[0]) < 1e-10);
    CHECK(pp.psi.center().real() > 0.0);
    const auto nado = pp.psi.boundary() / (1.0 + seq.a_minus1() * pp.phi.boundary());
    CHECK((nado - d.D.boundary()).sup_norm() < 1e-8);
    // phi'(0) = conj(a_0)
    CHECK(std::abs(pp.phi.coeffs()[1] - std::conj(seq.a(0))) < 1e-12);
  }
}

TEST_CASE("kernels_from_spectral: free case and the ratio identity") {
  const auto& g = grid();
  const auto free = forward_scatter(VerblunskySeq({-1.0, 0.0}, {}), g);
  const auto k = kernels_from_spectral(free.R, free.D, free.a_minus1);
  CHECK((k.k0_inner.boundary() - CircleFunction::constant(g, 1.0)).sup_norm() < 1e-15);
  CHECK(k.k0_outer.boundary().sup_norm() < 1e-15);
  CHECK(k.kinf_inner.boundary().sup_norm() < 1e-15);
  CHECK((k.kinf_outer.boundary() - CircleFunction::monomial(g, -1)).sup_norm() < 1e-15);

  const auto half = forward_scatter(VerblunskySeq({1.0, 0.0}, {0.5}), g);
  CHECK(std::abs(kernels_from_spectral(half.R, half.D, half.a_minus1).center_ratio() - 0.5) < 1e-8);
  const auto two = forward_scatter(VerblunskySeq({1.0, 0.0}, {0.5, 1.0 / 3.0}), g);
  CHECK(std::abs(kernels_from_spectral(two.R, two.D, two.a_minus1).center_ratio() - 0.5) < 1e-8);

  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const auto d = forward_scatter(seq, g);
    const auto kp = kernels_from_spectral(d.R, d.D, seq.a_minus1());
    CHECK(std::abs(kp.center_ratio() - std::conj(seq.a(0))) < 1e-8);
    const auto phi = phi_from_R(d.R, seq.a_minus1()).phi.boundary();
    const auto ratio = CircleFunction::monomial(g, 1) * kp.kinf_inner.boundary() / kp.k0_inner.boundary();
    CHECK((ratio - phi).sup_norm() < 1e-8);
    // second components vanish at infinity where required
    CHECK(std::abs(kp.kinf_outer.center()) < 1e-12);
  }
}

TEST_CASE("reproducing property of the kernels in the s-scalar product") {
  const auto& g = grid();
  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const auto d = forward_scatter(seq, g);
    const auto kp = kernels_from_spectral(d.R, d.D, seq.a_minus1());
    // f = 2 - t^{-1} + (1+i) t^2
    const auto f = CircleFunction::tabulate(g, [](cplx t) { return 2.0 - 1.0 / t + cplx{1.0, 1.0} * t * t; });
    const auto pair = scatter_transform(d, f);
    const auto wf = oracle::samples(d.w * f);
    const cplx integral = oracle::direct_coeff(wf, 0);
    const cplx at_zero = integral / d.D0();
    CHECK(std::abs(scatter_inner(d.s, pair, kp.k0_inner, kp.k0_outer) - at_zero) < 1e-10);
    // (t F2)(inf) = -a_{-1} (w f)^(-1) / D_*(inf) with D_*(inf) = D(0)
    const cplx at_inf = -seq.a_minus1() * oracle::direct_coeff(wf, -1) / d.D0();
    CHECK(std::abs(scatter_inner(d.s, pair, kp.kinf_inner, kp.kinf_outer) - at_inf) < 1e-10);
    // s F1 + F2 = -a_{-1} D f, so the s-norm is the L^2(w) norm
    const double norm2 = scatter_inner(d.s, pair, pair).real();
    CHECK(std::abs(norm2 - oracle::direct_coeff(oracle::samples(d.w * f.abs2()), 0).real()) < 1e-10);
  }
}

TEST_CASE("szego_asymptotics_residual") {
  const auto& g = grid();
  {
    const VerblunskySeq free({0.0, 1.0}, {});
    const auto d = forward_scatter(free, g);
    const auto b = laurent_basis(free, 12, d.w);
    for (auto [r0, r1] : szego_asymptotics_residual(d, b, {0, 1, 2, 3, 4})) {
      CHECK(r0 < 1e-14);
      CHECK(r1 < 1e-14);
    }
  }
  {
    const VerblunskySeq half({1.0, 0.0}, {0.5});
    const auto d = forward_scatter(half, g);
    const auto b = laurent_basis(half, 8, d.w);
    const auto res = szego_asymptotics_residual(d, b, {2});
    CHECK(res[0].first <= 1e-10);
    CHECK(res[0].second <= 1e-10);
  }
  {
    const VerblunskySeq three({1.0, 0.0}, {0.5, 1.0 / 3.0, 0.25});
    const auto d = forward_scatter(three, g);
    const auto b = laurent_basis(three, 14, d.w);
    const auto res = szego_asymptotics_residual(d, b, {0, 1, 2, 3, 4, 5, 6});
    for (std::size_t n = 1; n < res.size(); ++n) {
      CHECK(res[n].first <= res[n - 1].first + 1e-12);
      CHECK(res[n].second <= res[n - 1].second + 1e-12);
      if (2 * n >= 6) {
        CHECK(res[n].first <= 1e-10);
        CHECK(res[n].second <= 1e-10);
      }
    }
  }
  for (const auto& [name, seq] : testing::corpus()) {
    CAPTURE(name);
    const auto d = forward_scatter(seq, g);
    const auto b = laurent_basis(seq, 20, d.w);
    std::vector<std::size_t> ns;
    for (std::size_t n = 0; 2 * n + 1 < 20; ++n) ns.push_back(n);
    const auto res = szego_asymptotics_residual(d, b, ns);
    for (std::size_t n = 0; n < ns.size(); ++n) {
      if (2 * n >= seq.support() + 2) {
        CHECK(res[n].first <= 1e-10);
        CHECK(res[n].second <= 1e-10);
      }
    }
  }
}

TEST_CASE("scatter_from_weight handles a clamped weight and reports it") {
  const auto& g = grid();
  const auto w = CircleFunction::tabulate(g, [](cplx t) { return cplx{std::pow(std::abs(1.0 - t), 4) / 6.0, 0.0}; });
  const auto d = scatter_from_weight(w, {1.0, 0.0});
  CHECK(d.conditioning().clamped());
  double unimod = 0.0;
  for (std::size_t j = 0; j < d.s.size(); ++j) unimod = std::max(unimod, std::abs(std::abs(d.s[j]) - 1.0));
  CHECK(unimod < 1e-8);
}
