// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>

#include "cmvscat/classify.hpp"
#include "cmvscat/cli.hpp"
#include "cmvscat/hankel.hpp"
#include "cmvscat/inverse.hpp"
#include "cmvscat/scatter.hpp"
#include "corpus.hpp"

using namespace cmvscat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const CircleGrid& grid() {
  static const CircleGrid g(4096);
  return g;
}

// rho_j ... rho_{k-1}
double rho_range(const VerblunskySeq& seq, std::size_t j, std::size_t k) {
  double p = 1.0;
  for (std::size_t i = j; i < k; ++i) p *= seq.rho(i);
  return p;
}

void round_trip(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  double coeff_err = 0.0, am1_err = 0.0;
  for (const auto& [name, seq] : testing::corpus()) {
    const auto s = forward_scatter(seq, grid()).s;
    const auto rep = recover_verblunsky(s, seq.support() + 2, 256);
    double e = 0.0;
    for (std::size_t n = 0; n <= seq.support() + 2; ++n) e = std::max(e, std::abs(rep.seq.a(n) - seq.a(n)));
    const double ea = std::abs(rep.seq.a_minus1() - seq.a_minus1());
    out.require(e <= 1e-6, name + " coefficients");
    out.require(ea <= 1e-6, name + " a_-1");
    coeff_err = std::max(coeff_err, e);
    am1_err = std::max(am1_err, ea);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 60.0, "runtime");
  out.detail << "max|a_n error| " << coeff_err << ", max|a_-1 error| " << am1_err << ", " << secs << " s";
}

void widom(Outcome& out) {
  const struct {
    VerblunskySeq seq;
    double expected;
  } cases[] = {{VerblunskySeq({1.0, 0.0}, {0.5}), 0.75},
               {VerblunskySeq({1.0, 0.0}, {0.5, 1.0 / 3.0}), 0.75 * (8.0 / 9.0) * (8.0 / 9.0)}};
  for (const auto& c : cases) {
    const auto rows = widom_det(c.seq, {64, 128, 256}, grid());
    const auto& last = rows.back();
    out.require(std::abs(last.product - c.expected) <= 1e-14, "product value");
    out.require(std::abs(last.det - c.expected) <= 1e-6 * c.expected, "determinant at M=256");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      out.require(std::abs(rows[i].gap) <= std::abs(rows[i - 1].gap) + 1e-12, "gap monotone");
    }
    out.detail << "det(256) " << last.det << " vs " << c.expected << "; ";
  }
}

void aak_constant(Outcome& out) {
  double worst = 0.0;
  for (const auto& [name, seq] : testing::corpus()) {
    const auto d = forward_scatter(seq, grid());
    const auto h = hankel_from_symbol(d.s.coeffs(), 256);
    const double g0 = solve_block(h, BlockRhs::UnitH2).x(0).real();
    const double target = 1.0 / (d.D0() * d.D0());
    const double err = std::abs(g0 - target) / target;
    worst = std::max(worst, err);
    out.require(err <= 1e-6, name);
  }
  // s = t^2: the Hankel side sees nothing, the weight |1 - t|^4/6 has D(0)^2 = 1/6.
  // On the nodes rotated by pi/(3N), prod |1 - t_j u| = |1 - u^N| = 1, so the
  // discrete geometric mean of |1 - t|^4 is exactly 1 and no node sits on the zero.
  const cplx u = std::polar(1.0, M_PI / (3.0 * static_cast<double>(grid().size())));
  const auto w = CircleFunction::tabulate(grid(), [u](cplx t) { return cplx(std::pow(std::abs(1.0 - t * u), 4) / 6.0); });
  const double d0 = outer_from_modulus_squared(w).center().real();
  const auto t2 = CircleFunction::monomial(grid(), 2).coeffs();
  const auto numeric = regularity_test(t2, d0, 256);
  const auto closed = regularity_test(t2, 1.0 / std::sqrt(6.0), 256);
  const double factor = numeric.rhs / numeric.lhs;
  out.require(!numeric.regular && !closed.regular, "t^2 flagged");
  out.require(std::abs(factor - 6.0) <= 1e-10, "t^2 factor from the weight");
  out.require(std::abs(closed.rhs / closed.lhs - 6.0) <= 1e-12, "t^2 factor from D(0) = 1/sqrt6");
  out.detail << "corpus max rel. error " << worst << "; t^2 mismatch factor " << std::setprecision(8) << factor << " (closed form "
             << closed.rhs / closed.lhs << ")";
}

void glm(Outcome& out) {
  double worst_res = 0.0, worst_diag = 0.0;
  for (const auto& [name, seq] : testing::corpus()) {
    const auto d = forward_scatter(seq, grid());
    const auto c = d.s.coeffs();
    const double res = glm_factorization_residual(c, seq.a_minus1(), 8, 256);
    const auto m = glm_matrix(c, seq.a_minus1(), 8, 256).entries;
    for (Eigen::Index n = 0; n < 8; ++n) {
      const double expected = rho_range(seq, 0, static_cast<std::size_t>(n)) / d.D0();
      worst_diag = std::max(worst_diag, std::abs(std::abs(m(n, n)) - expected));
    }
    worst_res = std::max(worst_res, res);
    out.require(res <= 1e-5, name + " residual");
  }
  out.require(worst_diag <= 1e-6, "diagonal products");
  out.detail << "max residual " << worst_res << ", max diagonal error " << worst_diag;
}

void kernel_ratio(Outcome& out) {
  double worst = 0.0;
  for (const auto& [name, seq] : testing::corpus()) {
    const auto d = forward_scatter(seq, grid());
    const cplx ratio = kernels_from_spectral(d.R, d.D, d.a_minus1).center_ratio();
    const double err = std::abs(ratio - std::conj(seq.a(0)));
    worst = std::max(worst, err);
    out.require(err <= 1e-8, name);
  }
  out.detail << "max |ratio - conj(a0)| " << worst;
}

void nonunique(Outcome& out) {
  const auto rows = cli::nonunique_demo({100, 400}, grid());
  out.require(rows.back().sup_difference < rows.front().sup_difference, "sup difference decreasing");
  for (const auto& r : rows) {
    out.require(r.limit_index == 2, "index 2");
    out.require(!r.limit_regular[0] && !r.limit_regular[1], "regular=false");
    out.detail << "L=" << r.truncation << ": sup " << r.sup_difference << ", l2 " << r.l2_difference
               << ", index " << r.limit_index << ", ratio " << r.limit_ratio[0] << "; ";
  }
  out.detail << "truncations themselves: index " << rows.front().own_index[0] << "/" << rows.back().own_index[0]
             << ", regular " << rows.front().own_regular[0] << "/" << rows.back().own_regular[0];
}

void inclusions(Outcome& out) {
  std::vector<testing::Named> cases = testing::corpus();
  cases.push_back({"gamma=1/4", testing::jacobi_sequence(0.25, 0.0, 200)});
  for (const auto& [name, seq] : cases) {
    ClassInput in;
    in.seq = seq;
    const auto rep = classify(in);
    out.require(!rep.gi_member || rep.hs_member, name + " GI in HS");
    out.require(!rep.hs_member || rep.regular, name + " HS in regular");
    if (name == "gamma=1/4") {
      out.require(rep.hs_member, "gamma=1/4 hs_member");
      out.require(rep.gi.divergent(), "gamma=1/4 gi divergence");
      out.detail << "gamma=1/4: hs " << rep.hs_member << ", gi sum " << rep.gi.value << " (half window "
                 << rep.gi.half_window << "), gi_member " << rep.gi_member;
    }
  }
}

void structure(Outcome& out) {
  double unitary = 0.0, gram = 0.0, parseval = 0.0;
  bool shift_exact = true;
  for (const auto& [name, seq] : testing::corpus()) {
    unitary = std::max(unitary, unitarity_residual(build_cmv(seq, 24)));
    const auto d = forward_scatter(seq, grid());
    const auto basis = laurent_basis(seq, 16, d.w);
    gram = std::max(gram, (gram_matrix(basis, d.w) - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff());
    const auto c = d.s.coeffs();
    double sum = 0.0;
    for (const auto& x : c.raw()) sum += std::norm(x);
    const double l2 = d.s.l2_norm();
    parseval = std::max(parseval, std::abs(sum - l2 * l2) / (l2 * l2));
    const auto big = hankel_from_symbol(c, 64 + 3).matrix();
    shift_exact = shift_exact && hankel_from_symbol(c, 64).shifted(3).matrix() == big.block(0, 3, 64, 64);
  }
  out.require(unitary <= 1e-12, "unitarity");
  out.require(gram <= 1e-8, "Gram");
  out.require(parseval <= 1e-12, "Parseval");
  out.require(shift_exact, "shift identity");
  out.detail << "unitarity " << unitary << ", Gram " << gram << ", Parseval " << parseval << ", shift exact "
             << shift_exact;
}

void szego(Outcome& out) {
  double worst = 0.0;
  for (const auto& [name, seq] : testing::corpus()) {
    const auto d = forward_scatter(seq, grid());
    const auto basis = laurent_basis(seq, 24, d.w);
    std::vector<std::size_t> ns;
    for (std::size_t n = 0; 2 * n + 1 < 24; ++n) {
      if (2 * n >= seq.support() + 2) ns.push_back(n);
    }
    for (const auto& [even, odd] : szego_asymptotics_residual(d, basis, ns)) {
      worst = std::max({worst, even, odd});
    }
  }
  out.require(worst <= 1e-10, "residual");
  out.detail << "max residual for 2n >= support+2: " << worst;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"round-trip exactness", round_trip},
      {"Widom determinant identity", widom},
      {"point-evaluation constant equals 1/D(0)^2", aak_constant},
      {"GLM factorization", glm},
      {"kernel ratio equals conj(a0)", kernel_ratio},
      {"non-uniqueness demo", nonunique},
      {"class inclusions", inclusions},
      {"structural invariants", structure},
      {"Szego asymptotics", szego},
  };
  bool all = true;
  int index = 1;
  for (const auto& [label, check] : criteria) {
    Outcome out;
    out.detail.precision(3);
    try {
      check(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    all = all && out.pass;
    std::printf("%s %d %s: %s\n", out.pass ? "PASS" : "FAIL", index++, label, out.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
