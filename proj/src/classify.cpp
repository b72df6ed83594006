#include "cmvscat/classify.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "cmvscat/error.hpp"
#include "cmvscat/inverse.hpp"
#include "cmvscat/scatter.hpp"

namespace cmvscat {

WindowedSum besov_half_norm(const FourierCoeffs& c) {
  const int half = static_cast<int>(c.size() / 2);
  WindowedSum out;
  for (int k = -half + 1; k < half; ++k) {
    const double term = std::abs(k) * std::norm(c[k]);
    out.value += term;
    if (std::abs(k) <= half / 2) out.half_window += term;
  }
  return out;
}

double besov_negative(const FourierCoeffs& c, int window) {
  double acc = 0.0;
  for (int m = 1; m <= window; ++m) acc += m * std::norm(c[-m]);
  return acc;
}

namespace {

template <class Term>
WindowedSum sequence_sum(const VerblunskySeq& seq, Term term) {
  WindowedSum out;
  const std::size_t n = seq.support();
  for (std::size_t k = 0; k < n; ++k) {
    const double v = term(k, seq.a(k));
    out.value += v;
    if (2 * k < n) out.half_window += v;
  }
  // Short sequences are exactly finite; the doubling test needs a real tail.
  if (n < 16) out.half_window = out.value;
  return out;
}

}  // namespace

WindowedSum szego_sum(const VerblunskySeq& seq) {
  return sequence_sum(seq, [](std::size_t, cplx a) { return std::norm(a); });
}

WindowedSum gi_sum(const VerblunskySeq& seq) {
  return sequence_sum(seq, [](std::size_t k, cplx a) { return static_cast<double>(k) * std::norm(a); });
}

WindingResult winding_index(const CircleFunction& s, double r) {
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(std::abs(s[j]) - 1.0) > 1e-6) throw DomainError("winding index needs a unimodular symbol");
  }
  auto count = [&s](double radius) {
    const auto ext = harmonic_extension(s, radius);
    double min_mod = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t j = 0; j < ext.size(); ++j) {
      min_mod = std::min(min_mod, std::abs(ext[j]));
      total += std::arg(ext[(j + 1) % ext.size()] / ext[j]);
    }
    return WindingResult{static_cast<int>(std::lround(total / (2.0 * std::numbers::pi))), radius, min_mod};
  };
  std::optional<WindingResult> outer;
  for (double radius : winding_radii(r)) {
    const auto w = count(radius);
    if (w.min_modulus > 0.1) outer = w;
  }
  if (outer) return *outer;
  for (double fallback : {0.9, 0.8}) {
    if (fallback >= r) continue;
    const auto w = count(fallback);
    if (w.min_modulus > 0.1) return w;
  }
  throw NumericalFailure("harmonic extension of s passes near zero at every radius tried");
}

std::vector<double> winding_radii(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ArgumentError("winding radius must lie in (0, 1)");
  std::vector<double> radii{r};
  for (double next = 0.5 * (1.0 + r); next <= kOuterWindingRadius; next = 0.5 * (1.0 + next)) radii.push_back(next);
  return radii;
}

double a2_constant(const CircleFunction& w) {
  const std::size_t n = w.size();
  std::vector<long double> pw(2 * n + 1, 0.0L), pinv(2 * n + 1, 0.0L);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const double x = w[j % n].real();
    if (!(x > 0.0)) throw DomainError("A2 constant needs a positive weight");
    pw[j + 1] = pw[j] + x;
    pinv[j + 1] = pinv[j] + 1.0L / x;
  }
  long double best = 0.0L;
  for (std::size_t len = n / 2; len >= 8; len /= 2) {
    for (std::size_t start = 0; start < n; ++start) {
      const long double mw = (pw[start + len] - pw[start]) / len;
      const long double mi = (pinv[start + len] - pinv[start]) / len;
      best = std::max(best, mw * mi);
    }
  }
  return static_cast<double>(best);
}

std::vector<WidomRow> widom_det(const VerblunskySeq& seq, const std::vector<Eigen::Index>& orders,
                                const CircleGrid& grid) {
  const auto data = forward_scatter(seq, grid);
  const auto coeffs = data.s.coeffs();
  double product = 1.0;
  for (std::size_t n = 0; n < seq.support(); ++n) {
    product *= std::pow(seq.rho(n), 2.0 * static_cast<double>(n + 1));
  }
  std::vector<WidomRow> rows;
  for (Eigen::Index m : orders) {
    const Eigen::MatrixXcd h = hankel_from_symbol(coeffs, m).matrix();
    Eigen::LLT<Eigen::MatrixXcd> llt(Eigen::MatrixXcd::Identity(m, m) - h.adjoint() * h);
    double det = 0.0;
    if (llt.info() == Eigen::Success) {
      double log_det = 0.0;
      const auto& l = llt.matrixLLT();
      for (Eigen::Index i = 0; i < m; ++i) log_det += 2.0 * std::log(l(i, i).real());
      det = std::exp(log_det);
    }
    rows.push_back({m, det, product, std::abs(det - product) / product});
  }
  return rows;
}

namespace {

double inverse_weight_mean(const CircleFunction& w) {
  long double acc = 0.0L;
  for (std::size_t j = 0; j < w.size(); ++j) acc += 1.0L / w[j].real();
  return static_cast<double>(acc / w.size());
}

}  // namespace

ClassReport classify(const ClassInput& in) {
  if (!in.seq && !in.s) throw ArgumentError("classify needs a sequence or a scattering function");
  ClassReport rep;
  const CircleGrid grid = in.s ? in.s->grid() : CircleGrid(in.grid_size);
  const CircleGrid coarse(grid.size() / 2);

  std::optional<CircleFunction> s;
  std::optional<CircleFunction> w, w_coarse;
  std::optional<double> d0 = in.d0;
  cplx a_minus1{-1.0, 0.0};
  bool recovered_ok = true;

  if (in.seq) {
    const auto data = forward_scatter(*in.seq, grid);
    s = data.s;
    w = data.w;
    w_coarse = spectral_density(*in.seq, coarse);
    if (!d0) d0 = data.D0();
    a_minus1 = in.seq->a_minus1();
    rep.szego = szego_sum(*in.seq);
    rep.gi = gi_sum(*in.seq);
  } else {
    s = *in.s;
    try {
      const auto rec = recover_verblunsky(*s, in.recover_depth, in.order);
      rep.recovery_residual = rec.residual;
      recovered_ok = rec.regular;
      if (recovered_ok) {
        w = spectral_density(rec.seq, grid);
        w_coarse = spectral_density(rec.seq, coarse);
        if (!d0) d0 = rec.seq.rho_product();
        a_minus1 = rec.seq.a_minus1();
        rep.szego = szego_sum(rec.seq);
        rep.gi = gi_sum(rec.seq);
      } else {
        rep.diagnostics.push_back("recovered sequence does not reproduce s (residual " +
                                  std::to_string(rec.residual) + ")");
        if (!d0) d0 = rec.seq.rho_product();
      }
    } catch (const NotRegularError& e) {
      recovered_ok = false;
      rep.diagnostics.push_back(e.what());
    }
  }

  const auto coeffs = s->coeffs();
  rep.besov = besov_half_norm(coeffs);
  const auto wind = winding_index(*s, in.radius);
  rep.index = wind.index;
  rep.winding_radius = wind.radius;

  const HankelOp h = hankel_from_symbol(coeffs, in.order);
  rep.hankel_norm = sigma_max(h);
  if (d0) {
    rep.regularity = regularity_test(coeffs, *d0, in.order);
  } else {
    rep.regularity.reason = "no D(0) available";
  }
  rep.regular = rep.regularity.regular && recovered_ok;

  if (w && w_coarse) {
    rep.a2_constant = a2_constant(*w);
    rep.a2_coarse = a2_constant(*w_coarse);
    rep.a2_stable = rep.a2_constant <= 1.05 * rep.a2_coarse;
    rep.inverse_weight = inverse_weight_mean(*w);
    const double coarse_inv = inverse_weight_mean(*w_coarse);
    rep.inverse_weight_stable = rep.inverse_weight <= 1.05 * coarse_inv;
  } else {
    rep.a2_constant = std::numeric_limits<double>::infinity();
    rep.a2_coarse = std::numeric_limits<double>::infinity();
    rep.inverse_weight = std::numeric_limits<double>::infinity();
  }

  rep.hs_member = rep.hankel_norm < 1.0 - 1e-6 && rep.a2_stable;
  rep.gi_member = !rep.gi.divergent() && !rep.besov.divergent() && rep.index == 0 && w.has_value();

  if (rep.regular) {
    try {
      const auto glm = glm_matrix(coeffs, a_minus1, 8, in.order);
      rep.glm_column_norm = glm.entries.colwise().norm().maxCoeff();
    } catch (const Error& e) {
      rep.diagnostics.push_back(std::string("GLM matrix unavailable: ") + e.what());
    }
  }

  const bool cond_a2 = rep.a2_stable;
  const bool cond_hankel = rep.hankel_norm < 1.0 - 1e-6 && rep.inverse_weight_stable;
  if (cond_a2 != cond_hankel) {
    rep.diagnostics.push_back("A2 scan and (sigma_max < 1, 1/w integrable) disagree");
  }
  if (!rep.regularity.converged) rep.diagnostics.push_back("Hankel truncation not converged between M and 2M");
  if (rep.hs_member && !rep.regular) rep.diagnostics.push_back("inconsistency: hs_member without regularity");
  if (rep.gi_member && !rep.hs_member) rep.diagnostics.push_back("inconsistency: gi_member without hs_member");
  return rep;
}

}  // namespace cmvscat
