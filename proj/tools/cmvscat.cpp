#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cmvscat/cli.hpp"

int main(int argc, char** argv) {
  using cmvscat::cli::RunConfig;
  CLI::App app{"CMV forward and inverse scattering"};
  app.require_subcommand(1);

  std::map<std::string, RunConfig> configs;
  for (const auto& name : cmvscat::cli::commands()) {
    auto& cfg = configs[name];
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", cfg.input, "sequence JSON, or s CSV for inverse/classify");
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--grid", cfg.grid, "grid size N (power of two)")->capture_default_str();
    sub->add_option("--trunc", cfg.trunc, "Hankel order(s), or sequence lengths for demo-nonunique")->delimiter(',');
    sub->add_option("--order", cfg.order, "recovery depth n_max, or GLM block size")->capture_default_str();
    sub->add_option("--radius", cfg.radius, "radius for the winding index")->capture_default_str();
    sub->add_flag("--strict", cfg.strict, "exit 4 when the symbol is not regular");
    if (name == "forward") sub->add_option("--weight", cfg.weight, "also write the spectral weight as CSV");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cmvscat::cli::kInput;
  }
  for (const auto* sub : app.get_subcommands()) {
    return cmvscat::cli::run(sub->get_name(), configs[sub->get_name()], std::cout, std::cerr);
  }
  return cmvscat::cli::kInput;
}
