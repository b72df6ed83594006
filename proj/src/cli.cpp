#include "cmvscat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "cmvscat/classify.hpp"
#include "cmvscat/error.hpp"
#include "cmvscat/hankel.hpp"
#include "cmvscat/inverse.hpp"
#include "cmvscat/io.hpp"
#include "cmvscat/scatter.hpp"

namespace cmvscat::cli {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string num(cplx z) { return "(" + num(z.real() + 0.0) + "," + num(z.imag() + 0.0) + ")"; }

std::string out_path(const RunConfig& cfg, const char* fallback) { return cfg.out.empty() ? fallback : cfg.out; }

std::string sidecar_of(const std::string& csv) {
  return std::filesystem::path(csv).replace_extension(".json").string();
}

bool is_csv(const std::string& path) { return std::filesystem::path(path).extension() == ".csv"; }

void require_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ArgumentError("--input is required");
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(io::to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

VerblunskySeq demo_sequence(double even, double odd, std::size_t length) {
  std::vector<cplx> a(length);
  for (std::size_t n = 0; n < length; ++n) {
    a[n] = (n % 2 == 0 ? even : odd) / (static_cast<double>(n) + 3.0);
  }
  return {{-1.0, 0.0}, std::move(a)};
}

// D(0) from the sidecar written next to an s CSV, when there is one.
std::optional<double> sidecar_d0(const std::string& csv) {
  const auto path = sidecar_of(csv);
  if (!std::filesystem::exists(path)) return std::nullopt;
  const auto j = io::read_json(path);
  if (!j.contains("D0") || !j["D0"].is_number()) throw io::FormatError(path + ": sidecar needs a numeric \"D0\"");
  return j["D0"].get<double>();
}

std::string csv_comment(const RunConfig& cfg, const std::string& command) {
  return "cmvscat " + cfg.to_json(command).dump();
}

}  // namespace

void RunConfig::validate(const std::string& command) const {
  if (grid < 16 || (grid & (grid - 1)) != 0) throw ArgumentError("--grid must be a power of two >= 16");
  if (!(radius > 0.0 && radius < 1.0)) throw ArgumentError("--radius must lie in (0, 1)");
  if (command == "demo-nonunique") {
    for (long t : trunc) {
      if (t < 1) throw ArgumentError("--trunc lengths must be positive");
    }
    return;
  }
  for (long t : trunc) {
    if (t < 1 || static_cast<std::size_t>(t) > grid / 4) throw ArgumentError("--trunc orders must lie in 1..N/4");
  }
  const auto m = static_cast<std::size_t>(hankel_order());
  if ((command == "inverse" || command == "roundtrip" || command == "glm") && order > m / 4) {
    throw ArgumentError("--order must not exceed M/4");
  }
  if (command == "glm" && order < 1) throw ArgumentError("--order must be positive");
}

json RunConfig::to_json(const std::string& command) const {
  return {{"command", command}, {"input", input},   {"grid", grid},     {"trunc", trunc},
          {"order", order},     {"radius", radius}, {"strict", strict}};
}

int cmd_forward(const RunConfig& cfg, std::ostream& log) {
  require_input(cfg);
  const auto seq = io::read_seq(cfg.input);
  const CircleGrid grid(cfg.grid);
  const auto data = forward_scatter(seq, grid);
  const auto path = out_path(cfg, "s.csv");
  const auto comment = csv_comment(cfg, "forward");
  io::write_csv(path, data.s, comment);
  if (!cfg.weight.empty()) io::write_csv(cfg.weight, data.w, comment);
  const auto& cond = data.conditioning();
  json side{{"a_minus1", io::to_json(data.a_minus1)},
            {"D0", data.D0()},
            {"clamped_nodes", cond.clamped_nodes},
            {"oversampling", cond.oversampling},
            {"settled", cond.settled},
            {"config", cfg.to_json("forward")}};
  io::write_json(sidecar_of(path), side);
  log << "forward: N=" << cfg.grid << " support=" << seq.support() << " D0=" << num(data.D0())
      << " clamped=" << cond.clamped_nodes.size() << " -> " << path << '\n';
  return kOk;
}

int cmd_inverse(const RunConfig& cfg, std::ostream& log) {
  require_input(cfg);
  const auto s = io::read_csv(cfg.input);
  const auto d0 = sidecar_d0(cfg.input);
  const Eigen::Index m = cfg.hankel_order();
  const auto rep = recover_verblunsky(s, cfg.order, m);
  json j = io::to_json(rep);
  bool regular = rep.regular;
  if (d0) {
    const auto reg = regularity_test(s.coeffs(), *d0, m);
    regular = regular && reg.regular;
    j["regularity"] = {{"regular", reg.regular}, {"lhs", reg.lhs}, {"rhs", reg.rhs}, {"reason", reg.reason}};
  }
  j["regular"] = regular;
  if (!regular) j["non_unique"] = rep.residual > 1e-6;
  j["config"] = cfg.to_json("inverse");
  const auto path = out_path(cfg, "recovery.json");
  io::write_json(path, j);
  log << "inverse: n_max=" << cfg.order << " M=" << m << " a0=" << num(rep.seq.a(0)) << " a_-1=" << num(rep.seq.a_minus1())
      << " residual=" << num(rep.residual) << " regular=" << (regular ? "yes" : "no")
      << " -> " << path << '\n';
  return cfg.strict && !regular ? kNotRegular : kOk;
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& log) {
  require_input(cfg);
  const auto seq = io::read_seq(cfg.input);
  const CircleGrid grid(cfg.grid);
  const auto data = forward_scatter(seq, grid);
  const std::size_t n_max = std::max<std::size_t>(cfg.order, seq.support());
  const Eigen::Index m = std::max<Eigen::Index>(cfg.hankel_order(), static_cast<Eigen::Index>(n_max) + 64);
  if (static_cast<std::size_t>(m) > cfg.grid / 4) throw ArgumentError("roundtrip needs n_max + 64 <= N/4");
  const auto rep = recover_verblunsky(data.s, n_max, m);
  double err = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) err = std::max(err, std::abs(rep.seq.a(n) - seq.a(n)));
  const double am1_err = std::abs(rep.seq.a_minus1() - seq.a_minus1());
  json j = io::to_json(rep);
  j["max_coefficient_error"] = err;
  j["a_minus1_error"] = am1_err;
  j["config"] = cfg.to_json("roundtrip");
  const auto path = out_path(cfg, "roundtrip.json");
  io::write_json(path, j);
  log << "roundtrip: max|a_n - a~_n|=" << num(err) << " |a_-1 - a~_-1|=" << num(am1_err)
      << " regular=" << (rep.regular ? "yes" : "no") << " -> " << path << '\n';
  return cfg.strict && !rep.regular ? kNotRegular : kOk;
}

int cmd_widom(const RunConfig& cfg, std::ostream& log) {
  require_input(cfg);
  const auto seq = io::read_seq(cfg.input);
  std::vector<Eigen::Index> orders(cfg.trunc.begin(), cfg.trunc.end());
  if (orders.empty()) orders = {64, 128, 256};
  const auto rows = widom_det(seq, orders, CircleGrid(cfg.grid));
  const auto path = out_path(cfg, "widom.csv");
  std::ofstream out(path);
  if (!out) throw io::FormatError("cannot write " + path);
  out << "# " << csv_comment(cfg, "widom") << "\nM,det,product,gap\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g\n", static_cast<long>(r.order), r.det, r.product, r.gap);
    out << buf;
  }
  log << "widom: product=" << num(rows.back().product) << " det(M=" << rows.back().order
      << ")=" << num(rows.back().det) << " gap=" << num(rows.back().gap) << " -> " << path << '\n';
  return kOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& log) {
  require_input(cfg);
  ClassInput in;
  in.grid_size = cfg.grid;
  in.order = cfg.hankel_order();
  in.radius = cfg.radius;
  if (is_csv(cfg.input)) {
    in.s = io::read_csv(cfg.input);
    in.d0 = sidecar_d0(cfg.input);
  } else {
    in.seq = io::read_seq(cfg.input);
  }
  const auto rep = classify(in);
  json j = io::to_json(rep);
  j["config"] = cfg.to_json("classify");
  const auto path = out_path(cfg, "classify.json");
  io::write_json(path, j);
  log << "classify: index=" << rep.index << " sigma_max=" << num(rep.hankel_norm)
      << " regular=" << (rep.regular ? "yes" : "no") << " hs=" << (rep.hs_member ? "yes" : "no")
      << " gi=" << (rep.gi_member ? "yes" : "no") << " -> " << path << '\n';
  return cfg.strict && !rep.regular ? kNotRegular : kOk;
}

int cmd_glm(const RunConfig& cfg, std::ostream& log) {
  require_input(cfg);
  const auto seq = io::read_seq(cfg.input);
  const auto data = forward_scatter(seq, CircleGrid(cfg.grid));
  const auto m = static_cast<Eigen::Index>(cfg.order);
  const Eigen::Index order = cfg.hankel_order();
  const auto coeffs = data.s.coeffs();
  const auto glm = glm_matrix(coeffs, seq.a_minus1(), m, order);
  const double residual = glm_factorization_residual(coeffs, seq.a_minus1(), m, order);
  const double l_residual = l_factorization_residual(coeffs, m, order);
  json diag = json::array();
  for (Eigen::Index n = 0; n < m; ++n) diag.push_back(io::to_json(glm.entries(n, n)));
  json j{{"residual", residual},
         {"l_residual", l_residual},
         {"diagonal", diag},
         {"matrix", matrix_json(glm.entries)},
         {"D0", data.D0()},
         {"config", cfg.to_json("glm")}};
  const auto path = out_path(cfg, "glm.json");
  io::write_json(path, j);
  log << "glm: m=" << m << " M=" << order << " residual=" << num(residual) << " l_residual=" << num(l_residual)
      << " -> " << path << '\n';
  return kOk;
}

std::vector<DemoRow> nonunique_demo(const std::vector<std::size_t>& truncations, const CircleGrid& grid,
                                    double radius) {
  const std::size_t n = grid.size();
  auto excluded = [n](std::size_t j) {
    auto near = [n, j](std::size_t c) {
      const std::size_t d = j > c ? j - c : c - j;
      return std::min(d, n - d) <= 1;
    };
    return near(0) || near(n / 2);
  };
  const auto limit = CircleFunction::monomial(grid, 2);
  // shifted Hankel operators used in recovery need room beyond N/4
  const auto order = static_cast<Eigen::Index>(std::min<std::size_t>(256, n / 8));
  std::vector<DemoRow> rows;
  for (std::size_t length : truncations) {
    const VerblunskySeq seqs[2] = {demo_sequence(-2.0, -2.0, length), demo_sequence(2.0, -2.0, length)};
    DemoRow row{};
    row.truncation = length;
    std::optional<CircleFunction> s[2];
    for (int k = 0; k < 2; ++k) {
      const auto data = forward_scatter(seqs[k], grid);
      row.d0[k] = data.D0();
      row.own_index[k] = winding_index(data.s, radius).index;
      row.own_regular[k] = regularity_test(data.s.coeffs(), data.D0(), order).regular;
      ClassInput in;
      in.s = limit;
      in.d0 = data.D0();
      in.radius = radius;
      in.order = order;
      const auto rep = classify(in);
      row.limit_index = rep.index;
      row.limit_regular[k] = rep.regular;
      row.limit_ratio[k] = rep.regularity.rhs / rep.regularity.lhs;
      s[k] = data.s;
    }
    double sup = 0.0, l2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs((*s[0])[j] - (*s[1])[j]);
      l2 += d * d;
      if (!excluded(j)) sup = std::max(sup, d);
    }
    row.sup_difference = sup;
    row.l2_difference = std::sqrt(l2 / static_cast<double>(n));
    rows.push_back(row);
  }
  return rows;
}

int cmd_demo_nonunique(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::size_t> lengths(cfg.trunc.begin(), cfg.trunc.end());
  if (lengths.empty()) lengths = {100, 400};
  const auto rows = nonunique_demo(lengths, CircleGrid(cfg.grid), cfg.radius);
  json out = json::array();
  for (const auto& r : rows) {
    json seqs = json::array();
    for (int k = 0; k < 2; ++k) {
      seqs.push_back({{"D0", r.d0[k]},
                      {"own_index", r.own_index[k]},
                      {"own_regular", r.own_regular[k]},
                      {"limit_regular", r.limit_regular[k]},
                      {"limit_ratio", r.limit_ratio[k]}});
    }
    out.push_back({{"truncation", r.truncation},
                   {"sup_difference", r.sup_difference},
                   {"l2_difference", r.l2_difference},
                   {"limit_index", r.limit_index},
                   {"sequences", seqs}});
  }
  const bool decreasing = rows.size() < 2 || rows.back().sup_difference < rows.front().sup_difference;
  json j{{"sequences", {"a_n = -2/(n+3)", "a_n = 2(-1)^n/(n+3)"}},
         {"limit_symbol", "t^2"},
         {"rows", out},
         {"sup_difference_decreasing", decreasing},
         {"config", cfg.to_json("demo-nonunique")}};
  const auto path = out_path(cfg, "demo.json");
  io::write_json(path, j);
  for (const auto& r : rows) {
    log << "demo-nonunique: L=" << r.truncation << " sup|s1 - s2|=" << num(r.sup_difference)
        << " l2=" << num(r.l2_difference) << " index(t^2)=" << r.limit_index
        << " regular(t^2)=" << (r.limit_regular[0] || r.limit_regular[1] ? "yes" : "no") << '\n';
  }
  log << "demo-nonunique: difference " << (decreasing ? "decreasing" : "not decreasing") << " -> " << path << '\n';
  return kOk;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"forward", "inverse", "roundtrip",     "widom",
                                              "classify", "glm",    "demo-nonunique"};
  return names;
}

int run(const std::string& command, const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    cfg.validate(command);
    if (command == "forward") return cmd_forward(cfg, log);
    if (command == "inverse") return cmd_inverse(cfg, log);
    if (command == "roundtrip") return cmd_roundtrip(cfg, log);
    if (command == "widom") return cmd_widom(cfg, log);
    if (command == "classify") return cmd_classify(cfg, log);
    if (command == "glm") return cmd_glm(cfg, log);
    if (command == "demo-nonunique") return cmd_demo_nonunique(cfg, log);
    throw ArgumentError("unknown command " + command);
  } catch (const NotRegularError& e) {
    err << "not regular: " << e.what() << " (sigma_max " << num(e.sigma_max()) << ")\n";
    return kNotRegular;
  } catch (const ArgumentError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace cmvscat::cli
