#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "cmvscat/circle.hpp"

namespace cmvscat::cli {

enum ExitCode : int { kOk = 0, kInput = 2, kNumerical = 3, kNotRegular = 4 };

struct RunConfig {
  std::string input;
  std::string out;
  // optional weight CSV written by forward
  std::string weight;
  std::size_t grid = CircleGrid::kDefaultSize;
  // Hankel orders (widom takes the list, other commands the last entry) or,
  // for demo-nonunique, sequence truncations
  std::vector<long> trunc;
  // recovery depth n_max for inverse/roundtrip, block size m for glm
  std::size_t order = 16;
  double radius = 0.95;
  bool strict = false;

  Eigen::Index hankel_order() const { return trunc.empty() ? 256 : trunc.back(); }
  // N a power of two >= 16; Hankel orders <= N/4; order <= M/4. Throws ArgumentError.
  void validate(const std::string& command) const;
  // Everything that affects results; output paths are left out.
  nlohmann::json to_json(const std::string& command) const;
};

int cmd_forward(const RunConfig& cfg, std::ostream& log);
int cmd_inverse(const RunConfig& cfg, std::ostream& log);
int cmd_roundtrip(const RunConfig& cfg, std::ostream& log);
int cmd_widom(const RunConfig& cfg, std::ostream& log);
int cmd_classify(const RunConfig& cfg, std::ostream& log);
int cmd_glm(const RunConfig& cfg, std::ostream& log);
int cmd_demo_nonunique(const RunConfig& cfg, std::ostream& log);

const std::vector<std::string>& commands();

// Dispatches by name and maps exceptions to exit codes, reporting to err.
int run(const std::string& command, const RunConfig& cfg, std::ostream& log, std::ostream& err);

struct DemoRow {
  std::size_t truncation;
  double sup_difference;
  double l2_difference;
  // per sequence: D(0), winding index of its own s, and the regularity
  // of the truncated sequence itself
  double d0[2];
  int own_index[2];
  bool own_regular[2];
  // the common limit symbol t^2 checked against each D(0)
  int limit_index;
  bool limit_regular[2];
  double limit_ratio[2];
};

// a_n = -2/(n+3) and a_n = 2(-1)^n/(n+3), a_{-1} = -1, truncated at each length.
// Differences exclude the node at t = 1 and t = -1 and their neighbours.
std::vector<DemoRow> nonunique_demo(const std::vector<std::size_t>& truncations, const CircleGrid& grid,
                                    double radius = 0.95);

}  // namespace cmvscat::cli
