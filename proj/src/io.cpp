#include "cmvscat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmvscat/error.hpp"

namespace cmvscat::io {

using nlohmann::json;

// + 0.0 turns -0 into 0 so that output does not depend on the sign of zero.
json to_json(cplx z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const VerblunskySeq& seq) {
  json a = json::array();
  for (const auto& x : seq.coeffs()) a.push_back(to_json(x));
  return {{"a_minus1", to_json(seq.a_minus1())}, {"a", a}};
}

VerblunskySeq seq_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a_minus1") || !j.contains("a") || !j["a"].is_array()) {
    throw FormatError("sequence JSON needs \"a_minus1\" and an array \"a\"");
  }
  std::vector<cplx> a;
  a.reserve(j["a"].size());
  for (const auto& x : j["a"]) a.push_back(complex_from_json(x));
  return {complex_from_json(j["a_minus1"]), std::move(a)};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << '\n';
}

VerblunskySeq read_seq(const std::string& path) { return seq_from_json(read_json(path)); }

void write_csv(std::ostream& out, const CircleFunction& f, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "index,theta,re,im\n";
  char buf[128];
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", j, f.grid().theta(j), f[j].real(), f[j].imag());
    out << buf;
  }
}

void write_csv(const std::string& path, const CircleFunction& f, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  write_csv(out, f, comment);
}

CircleFunction read_csv(std::istream& in) {
  std::vector<cplx> v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
    std::size_t idx = 0;
    double theta = 0.0, re = 0.0, im = 0.0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf%c", &idx, &theta, &re, &im, &tail) != 4) {
      throw FormatError("malformed CSV row: " + line);
    }
    if (idx != v.size()) throw FormatError("CSV rows must be indexed 0..N-1 in order");
    if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("non-finite sample in CSV");
    v.emplace_back(re, im);
  }
  const std::size_t n = v.size();
  if (n < 16 || (n & (n - 1)) != 0) throw FormatError("CSV must hold a power-of-two number >= 16 of samples");
  return {CircleGrid(n), std::move(v)};
}

CircleFunction read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_csv(in);
}

json to_json(const RecoveryReport& rep) {
  json j = to_json(rep.seq);
  j["rho"] = rep.rho;
  j["consistency"] = rep.consistency;
  j["residual"] = rep.residual;
  j["a_minus1_spread"] = rep.a_minus1_spread;
  j["sigma_max"] = rep.sigma_max;
  j["regular"] = rep.regular;
  j["warnings"] = rep.warnings;
  return j;
}

namespace {

json windowed(const WindowedSum& w) {
  return {{"value", w.value}, {"half_window", w.half_window}, {"divergent", w.divergent()}};
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const ClassReport& rep) {
  json j;
  j["szego_sum"] = windowed(rep.szego);
  j["gi_sum"] = windowed(rep.gi);
  j["besov"] = windowed(rep.besov);
  j["index"] = rep.index;
  j["winding_radius"] = rep.winding_radius;
  j["a2_constant"] = finite_or_null(rep.a2_constant);
  j["a2_coarse"] = finite_or_null(rep.a2_coarse);
  j["a2_stable"] = rep.a2_stable;
  j["inverse_weight"] = finite_or_null(rep.inverse_weight);
  j["inverse_weight_stable"] = rep.inverse_weight_stable;
  j["hankel_norm"] = rep.hankel_norm;
  j["regularity"] = {{"regular", rep.regularity.regular},
                     {"lhs", rep.regularity.lhs},
                     {"rhs", rep.regularity.rhs},
                     {"sigma_max", rep.regularity.sigma_max},
                     {"converged", rep.regularity.converged},
                     {"reason", rep.regularity.reason}};
  j["recovery_residual"] = rep.recovery_residual ? json(*rep.recovery_residual) : json(nullptr);
  j["glm_column_norm"] = rep.glm_column_norm ? json(*rep.glm_column_norm) : json(nullptr);
  j["regular"] = rep.regular;
  j["hs_member"] = rep.hs_member;
  j["gi_member"] = rep.gi_member;
  j["diagnostics"] = rep.diagnostics;
  return j;
}

}  // namespace cmvscat::io
