#include "cmvscat/opuc.hpp"

#include <cmath>
#include <string>

#include "cmvscat/error.hpp"
#include "cmvscat/kernels.hpp"

namespace cmvscat {

VerblunskySeq::VerblunskySeq(cplx a_minus1, std::vector<cplx> a)
    : a_minus1_(a_minus1), a_(std::move(a)) {
  if (!std::isfinite(a_minus1_.real()) || !std::isfinite(a_minus1_.imag()) ||
      std::abs(std::abs(a_minus1_) - 1.0) > 1e-12) {
    throw DomainError("a_minus1 must be unimodular");
  }
  for (std::size_t k = 0; k < a_.size(); ++k) {
    const double m = std::abs(a_[k]);
    if (!std::isfinite(m) || m > 1.0 - 1e-12) {
      throw DomainError("Verblunsky coefficient a_" + std::to_string(k) + " is not inside the unit disk");
    }
  }
}

double VerblunskySeq::rho(std::size_t k) const { return std::sqrt(1.0 - std::norm(a(k))); }

double VerblunskySeq::rho_product(std::size_t n) const {
  double p = 1.0;
  for (std::size_t k = 0; k < n; ++k) p *= rho(k);
  return p;
}

namespace {

void place_block(Eigen::MatrixXcd& m, Eigen::Index at, cplx a, double rho) {
  const Eigen::Index n = m.rows();
  const cplx b[2][2] = {{a, rho}, {rho, -std::conj(a)}};
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      if (at + i < n && at + j < n) m(at + i, at + j) = b[i][j];
    }
  }
}

}  // namespace

CmvMatrix build_cmv(const VerblunskySeq& seq, Eigen::Index n) {
  if (n < 2) throw ArgumentError("CMV truncation needs n >= 2");
  // Build one step larger so the leading n x n block of the product is exact
  // up to the final row/column pair.
  const Eigen::Index big = n + 2;
  Eigen::MatrixXcd even = Eigen::MatrixXcd::Zero(big, big);
  Eigen::MatrixXcd odd = Eigen::MatrixXcd::Zero(big, big);
  for (Eigen::Index k = 0; k < big; k += 2) {
    place_block(even, k, seq.a(static_cast<std::size_t>(k)), seq.rho(static_cast<std::size_t>(k)));
  }
  odd(0, 0) = -std::conj(seq.a_minus1());
  for (Eigen::Index k = 1; k < big; k += 2) {
    place_block(odd, k, seq.a(static_cast<std::size_t>(k)), seq.rho(static_cast<std::size_t>(k)));
  }
  return {(odd * even).topLeftCorner(n, n)};
}

double unitarity_residual(const CmvMatrix& c) {
  const Eigen::Index k = c.dim() - 3;
  if (k <= 0) return 0.0;
  const Eigen::MatrixXcd cols = c.entries.leftCols(k);
  const Eigen::MatrixXcd g = cols.adjoint() * cols - Eigen::MatrixXcd::Identity(k, k);
  return g.cwiseAbs().maxCoeff();
}

double cmv_recursion_check(const VerblunskySeq& seq, Eigen::Index n) {
  if (n < 2 * static_cast<Eigen::Index>(seq.support()) + 4) {
    throw ArgumentError("cmv_recursion_check needs n >= 2 * support + 4");
  }
  const Eigen::Index big = n + 4;
  const Eigen::MatrixXcd c = build_cmv(seq, big).entries;
  const Eigen::MatrixXcd c_inv = c.adjoint();
  auto e = [big](Eigen::Index k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(big);
    if (k >= 0) v(k) = 1.0;
    return v;
  };
  auto a = [&seq](Eigen::Index k) {
    return k == -1 ? seq.a_minus1() : seq.a(static_cast<std::size_t>(k));
  };
  auto rho = [&seq](Eigen::Index k) { return k < 0 ? 0.0 : seq.rho(static_cast<std::size_t>(k)); };

  double worst = 0.0;
  for (Eigen::Index m = 0; 2 * m + 2 < n; ++m) {
    const Eigen::Index ev = 2 * m;
    // A^{-1}(rho_{2m-1} e_{2m-1} - conj(a_{2m-1}) e_{2m}) = conj(a_{2m}) e_{2m} + rho_{2m} e_{2m+1}
    const Eigen::VectorXcd lhs1 = c_inv * (rho(ev - 1) * e(ev - 1) - std::conj(a(ev - 1)) * e(ev));
    const Eigen::VectorXcd rhs1 = std::conj(a(ev)) * e(ev) + rho(ev) * e(ev + 1);
    // A(rho_{2m} e_{2m} - a_{2m} e_{2m+1}) = a_{2m+1} e_{2m+1} + rho_{2m+1} e_{2m+2}
    const Eigen::VectorXcd lhs2 = c * (rho(ev) * e(ev) - a(ev) * e(ev + 1));
    const Eigen::VectorXcd rhs2 = a(ev + 1) * e(ev + 1) + rho(ev + 1) * e(ev + 2);
    worst = std::max(worst, (lhs1 - rhs1).head(n).cwiseAbs().maxCoeff());
    worst = std::max(worst, (lhs2 - rhs2).head(n).cwiseAbs().maxCoeff());
  }
  return worst;
}

DiskFunction schur_caratheodory(const VerblunskySeq& seq, const CircleGrid& grid) {
  const auto& k = kernels::active();
  const std::size_t n = grid.size();
  std::vector<cplx> f(n, cplx{});
  for (std::size_t i = seq.support(); i-- > 0;) {
    k.schur_step(seq.schur_parameter(i), grid.nodes().data(), f.data(), n);
  }
  std::vector<cplx> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx zf = grid.node(j) * f[j];
    r[j] = (1.0 + zf) / (1.0 - zf);
  }
  CircleFunction boundary(grid, std::move(r));
  auto proj = DiskFunction::project(boundary);
  std::vector<cplx> taylor(proj.coeffs().begin(), proj.coeffs().end());
  taylor[0] = 1.0;
  std::vector<cplx> params(seq.support());
  for (std::size_t i = 0; i < params.size(); ++i) params[i] = seq.schur_parameter(i);
  BoundaryFn exact = [params = std::move(params)](cplx z) {
    cplx fz{};
    for (std::size_t i = params.size(); i-- > 0;) {
      const cplx zf = z * fz;
      fz = (params[i] + zf) / (1.0 + std::conj(params[i]) * zf);
    }
    const cplx zf = z * fz;
    return (1.0 + zf) / (1.0 - zf);
  };
  return {DiskFunction::Side::Interior, std::move(taylor), std::move(boundary), Conditioning{}, std::move(exact)};
}

CircleFunction spectral_density(const VerblunskySeq& seq, const CircleGrid& grid) {
  return schur_caratheodory(seq, grid).boundary().real();
}

LaurentBasis laurent_basis(const VerblunskySeq& seq, std::size_t m, const CircleFunction& w) {
  const CircleGrid& grid = w.grid();
  if (m > grid.size() / 4) throw ArgumentError("laurent_basis needs m <= N/4");
  LaurentBasis out;
  if (m == 0) return out;
  auto& p = out.functions;
  const auto t = CircleFunction::monomial(grid, 1);
  const auto t_inv = CircleFunction::monomial(grid, -1);
  auto a = [&seq](std::size_t k) { return seq.a(k); };
  auto rho = [&seq](std::size_t k) { return seq.rho(k); };

  p.push_back(CircleFunction::constant(grid, 1.0));
  if (m > 1) {
    p.push_back((1.0 / rho(0)) * ((-std::conj(seq.a_minus1())) * t_inv + CircleFunction::constant(grid, -std::conj(a(0)))));
  }
  while (p.size() < m) {
    const std::size_t n = p.size();
    if (n % 2 == 0) {
      const std::size_t k = (n - 2) / 2;
      const auto inner = rho(2 * k) * p[2 * k] - a(2 * k) * p[2 * k + 1];
      p.push_back((1.0 / rho(2 * k + 1)) * (t * inner - a(2 * k + 1) * p[2 * k + 1]));
    } else {
      const std::size_t k = (n - 1) / 2;
      const auto inner = rho(2 * k - 1) * p[2 * k - 1] - std::conj(a(2 * k - 1)) * p[2 * k];
      p.push_back((1.0 / rho(2 * k)) * (t_inv * inner - std::conj(a(2 * k)) * p[2 * k]));
    }
  }

  std::vector<double> weight(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) weight[j] = w[j].real();
  const auto& ker = kernels::active();
  const double inv_n = 1.0 / static_cast<double>(w.size());
  auto inner = [&](std::size_t i, std::size_t j) {
    return ker.wdot(p[i].samples().data(), p[j].samples().data(), weight.data(), w.size()) * inv_n;
  };
  for (std::size_t i = 0; i < m; ++i) {
    double loss = std::abs(inner(i, i) - 1.0);
    if (i >= 1) loss = std::max(loss, std::abs(inner(i, i - 1)));
    if (i >= 2) loss = std::max(loss, std::abs(inner(i, i - 2)));
    if (loss > 1e-6) {
      throw NumericalFailure("Laurent basis lost orthogonality at index " + std::to_string(i));
    }
  }

  out.leading.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = p[i].coeffs();
    const int idx = i % 2 == 0 ? static_cast<int>(i / 2) : -static_cast<int>(i / 2 + 1);
    out.leading.push_back(c[idx]);
  }
  return out;
}

Eigen::MatrixXcd gram_matrix(const LaurentBasis& basis, const CircleFunction& w) {
  const auto& p = basis.functions;
  const auto m = static_cast<Eigen::Index>(p.size());
  std::vector<double> weight(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) weight[j] = w[j].real();
  const auto& ker = kernels::active();
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      g(i, j) = ker.wdot(p[static_cast<std::size_t>(i)].samples().data(),
                         p[static_cast<std::size_t>(j)].samples().data(), weight.data(), w.size()) /
                static_cast<double>(w.size());
    }
  }
  return g;
}

}  // namespace cmvscat
