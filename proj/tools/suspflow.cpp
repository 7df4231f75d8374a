// suspflow: mixing verdicts, cohomology constructions and flow simulations
// for suspension flows over shift spaces.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "suspension/cli.hpp"

namespace {

using namespace suspension;

SystemConfig load_config(const std::string& path, const std::string& preset) {
  if (!path.empty() && !preset.empty())
    throw InvalidArgument("give either --config or --preset, not both");
  if (!preset.empty())
    return preset_config(preset);
  if (path.empty())
    throw InvalidArgument("a system is required: --config PATH or --preset NAME");
  std::ifstream f(path);
  if (!f)
    throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suspension flows over shift spaces: mixing verdicts and simulations"};
  app.require_subcommand(1);
  std::string config_path, preset, out_dir, mode = "test", beta_spec, example = "all";
  std::size_t bound = 0, depth = 8, digits = 12;
  double horizon = 0;
  bool json = false;

  auto system_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "system description file");
    sub->add_option("--preset", preset, "built-in system (example-4.1, example-4.2, example-4.3, two-orbit, "
                                        "golden-beta, mixing-alpha, constant)");
  };
  app.add_flag("--json", json, "print the JSON report instead of the summary");

  auto* decide = app.add_subcommand("decide", "decide topological mixing of the flow");
  system_options(decide);
  decide->add_option("--bound", bound, "period bound for non-SFT bases");

  auto* cohomology = app.add_subcommand("cohomology", "cohomology test, delta-grid normalization, cross-section");
  system_options(cohomology);
  cohomology->add_option("--mode", mode, "test | normalize | section")
      ->check(CLI::IsMember({"test", "normalize", "section"}));

  auto* simulate = app.add_subcommand("simulate", "hitting times of a witness family and residue diagnostic");
  system_options(simulate);
  simulate->add_option("--horizon", horizon, "time horizon");
  simulate->add_option("--out", out_dir, "directory for series.csv and diagnostic.csv");

  auto* beta = app.add_subcommand("beta", "beta-expansion of 1 and truncated graph statistics");
  beta->add_option("spec", beta_spec, "'rational p/q', 'quadratic a b d' or 'float x guard g'")->required();
  beta->add_option("--depth", depth, "truncation depth of the graph");
  beta->add_option("--digits", digits, "digits of the expansion to print");

  auto* examples = app.add_subcommand("examples", "run the built-in examples and their checks");
  examples->add_option("name", example, "4.1, 4.2, 4.3, two-orbit, golden-beta or all");

  for (auto* sub : {decide, cohomology, simulate, beta, examples})
    sub->add_flag("--json", json, "print the JSON report instead of the summary");

  CLI11_PARSE(app, argc, argv);

  try {
    CommandResult result;
    if (decide->parsed()) {
      System sys = build_system(load_config(config_path, preset));
      result = cmd_decide(sys, bound ? std::optional<std::size_t>(bound) : std::nullopt);
    } else if (cohomology->parsed()) {
      result = cmd_cohomology(build_system(load_config(config_path, preset)), mode);
    } else if (simulate->parsed()) {
      System sys = build_system(load_config(config_path, preset));
      result = cmd_simulate(sys, horizon > 0 ? std::optional<double>(horizon) : std::nullopt, out_dir);
    } else if (beta->parsed()) {
      result = cmd_beta(beta_spec, depth, digits);
    } else {
      result = cmd_examples(example);
    }
    if (json)
      std::cout << result.report.dump(2) << '\n';
    else
      std::cout << result.text;
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
