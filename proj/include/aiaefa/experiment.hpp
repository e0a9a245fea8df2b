#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aiaefa/engine.hpp"

namespace aiaefa {

// Exit codes used by run_experiment and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadConfig = 2;    // unknown problem/algorithm
inline constexpr int kExitEvaluator = 3;    // evaluator failure inside a run

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One parsed key/value table of the experiment file.
using ConfigTable = std::map<std::string, std::string>;

/// Multi-run experiment across problems and algorithm variants.
/// Run i of every (problem, algorithm) cell uses seed = base_seed + i.
struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<std::string> algorithms;  // "aefa" and/or "ai-aefa"
  int runs = 20;
  std::uint64_t base_seed = 1;
  std::string output_dir = "out";
  bool trace = false;
  int parallel = 1;
  std::string reference;  // algorithm the summary compares against
  std::map<std::string, ConfigTable> algorithm_overrides;
};

/// Parses the INI-style experiment file ([algorithm] tables, key = value,
/// '#'/';' comments). Throws ConfigError on malformed input.
ExperimentConfig load_experiment_config(const std::string& path);

/// Builds the per-run engine configuration for an algorithm name, applying
/// the table overrides on top of the defaults. max_evaluations defaults to
/// 500*N for problems up to 10 dimensions and 1000*N above.
RunConfig make_run_config(const std::string& algorithm,
                          const ConfigTable& overrides,
                          const ProblemSpec& problem);

/// Executes runs x problems x algorithms, writing results.csv, summary.csv
/// and (when tracing) per-combination trace and attribution CSVs under the
/// output directory. Returns an exit code; diagnostics go to `log`.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

/// Human-readable registry entry: dimensions, bounds, constraint counts,
/// integer mask and the known best with its citation.
std::string describe_problem(const std::string& name);

std::string list_problems();

}  // namespace aiaefa
