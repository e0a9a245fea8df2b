#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aiaefa/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Constrained electric-field metaheuristic toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  bool trace_flag = false;
  int parallel_override = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "Execute an experiment config");
  run_cmd->add_option("config", config_path, "Experiment config file")
      ->required();
  run_cmd->add_option("--out", out_override, "Output directory override");
  run_cmd
      ->add_option("--seed", seed_override,
                   "Base seed override (run i uses seed + i)")
      ->each([&](const std::string&) { seed_set = true; });
  run_cmd->add_flag("--trace", trace_flag,
                    "Record iteration traces and attribution CSVs");
  run_cmd->add_option("--parallel", parallel_override,
                      "Worker pool size (default 1)");

  std::string problem_name;
  CLI::App* describe_cmd =
      app.add_subcommand("describe", "Show a registered problem");
  describe_cmd->add_option("problem", problem_name, "Problem name")
      ->required();

  app.add_subcommand("list", "List registered problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      aiaefa::ExperimentConfig config =
          aiaefa::load_experiment_config(config_path);
      if (!out_override.empty()) config.output_dir = out_override;
      if (seed_set) config.base_seed = seed_override;
      if (trace_flag) config.trace = true;
      if (parallel_override > 0) config.parallel = parallel_override;
      return aiaefa::run_experiment(config, std::cerr);
    }
    if (describe_cmd->parsed()) {
      std::cout << aiaefa::describe_problem(problem_name);
      return aiaefa::kExitOk;
    }
    std::cout << aiaefa::list_problems();
    return aiaefa::kExitOk;
  } catch (const aiaefa::ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return aiaefa::kExitBadConfig;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return aiaefa::kExitBadConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return aiaefa::kExitEvaluator;
  }
}
