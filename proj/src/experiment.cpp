#include "aiaefa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "aiaefa/csv.hpp"
#include "aiaefa/explain.hpp"
#include "aiaefa/metrics.hpp"

namespace fs = std::filesystem;

namespace aiaefa {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream in(value);
  while (std::getline(in, current, ',')) {
    std::string item = trim(current);
    if (!item.empty()) items.push_back(std::move(item));
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                      value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-integer value '" +
                      value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError("config: key '" + key + "' has non-boolean value '" +
                    value + "'");
}

struct ParsedIni {
  ConfigTable root;
  std::map<std::string, ConfigTable> sections;
};

ParsedIni parse_ini(std::istream& in) {
  ParsedIni parsed;
  ConfigTable* current = &parsed.root;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      }
      const std::string section = trim(text.substr(1, text.size() - 2));
      current = &parsed.sections[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    (*current)[key] = value;
  }
  return parsed;
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') {
      c = '_';
    }
  }
  return out;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  const ParsedIni parsed = parse_ini(in);

  ExperimentConfig config;
  for (const auto& [key, value] : parsed.root) {
    if (key == "problems") {
      config.problems = split_list(value);
    } else if (key == "algorithms") {
      config.algorithms = split_list(value);
    } else if (key == "runs") {
      config.runs = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      config.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "output") {
      config.output_dir = value;
    } else if (key == "trace") {
      config.trace = parse_bool(key, value);
    } else if (key == "parallel") {
      config.parallel = static_cast<int>(parse_int(key, value));
    } else if (key == "reference") {
      config.reference = value;
    } else {
      throw ConfigError("config: unknown top-level key '" + key + "'");
    }
  }
  if (config.problems.empty()) {
    throw ConfigError("config: 'problems' must list at least one problem");
  }
  if (config.algorithms.empty()) {
    throw ConfigError("config: 'algorithms' must list at least one algorithm");
  }
  if (config.runs < 1) {
    throw ConfigError("config: 'runs' must be >= 1");
  }
  if (config.parallel < 1) {
    throw ConfigError("config: 'parallel' must be >= 1");
  }
  if (config.reference.empty()) {
    config.reference = config.algorithms.front();
  }
  config.algorithm_overrides = parsed.sections;
  return config;
}

RunConfig make_run_config(const std::string& algorithm,
                          const ConfigTable& overrides,
                          const ProblemSpec& problem) {
  RunConfig rc;
  if (algorithm == "aefa") {
    rc.schedule.kind = ScheduleKind::exponential;
  } else if (algorithm == "ai-aefa") {
    rc.schedule.kind = ScheduleKind::chaotic_sigmoid;
  } else {
    throw ConfigError("unknown algorithm '" + algorithm +
                      "'; supported: aefa, ai-aefa");
  }

  bool explicit_budget = false;
  for (const auto& [key, value] : overrides) {
    if (key == "population") {
      rc.population_size = static_cast<int>(parse_int(key, value));
    } else if (key == "iterations") {
      rc.max_iterations = static_cast<int>(parse_int(key, value));
    } else if (key == "max_evaluations") {
      rc.max_evaluations = parse_int(key, value);
      explicit_budget = true;
    } else if (key == "velocity_bound_fraction") {
      rc.velocity_bound_fraction = parse_double(key, value);
    } else if (key == "epsilon_force") {
      rc.force_epsilon = parse_double(key, value);
    } else if (key == "kbest") {
      if (value == "linear") {
        rc.kbest_mode = KbestMode::linear_n_to_2;
      } else if (value == "all") {
        rc.kbest_mode = KbestMode::all_agents;
      } else {
        throw ConfigError("config: kbest must be 'linear' or 'all'");
      }
    } else if (key == "k0") {
      const double v = parse_double(key, value);
      rc.schedule.exponential.k0 = v;
      rc.schedule.sigmoid.k0 = v;
    } else if (key == "alpha") {
      rc.schedule.exponential.alpha = parse_double(key, value);
    } else if (key == "beta") {
      rc.schedule.sigmoid.beta = parse_double(key, value);
    } else if (key == "delta") {
      rc.schedule.sigmoid.delta = parse_double(key, value);
    } else if (key == "r") {
      rc.schedule.chaos.r = parse_double(key, value);
    } else if (key == "k1_init") {
      rc.schedule.chaos.k1 = parse_double(key, value);
    } else if (key == "a") {
      rc.schedule.chaos.a = parse_double(key, value);
    } else if (key == "b") {
      rc.schedule.chaos.b = parse_double(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "' in [" + algorithm +
                        "]");
    }
  }
  if (!explicit_budget) {
    const long long per_dim = problem.space.dim() <= 10 ? 500 : 1000;
    rc.max_evaluations = per_dim * rc.population_size;
  }
  return rc;
}

namespace {

struct Job {
  int problem_idx;
  int algorithm_idx;
  int run_idx;
  RunConfig config;
};

struct CellKey {
  int problem_idx;
  int algorithm_idx;
  bool operator<(const CellKey& other) const {
    return std::tie(problem_idx, algorithm_idx) <
           std::tie(other.problem_idx, other.algorithm_idx);
  }
};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << contents;
}

void export_explain_layer(const fs::path& cell_dir, const Dataset& dataset) {
  fs::create_directories(cell_dir);

  std::ostringstream corr_csv;
  write_correlation_csv(corr_csv, pearson_correlation(dataset));
  write_file(cell_dir / "correlation.csv", corr_csv.str());

  const auto surrogate = fit_surrogate(dataset, SurrogateKind::linear);

  // Stride-subsampled background keeps exact enumeration cheap on long runs.
  Dataset background = dataset;
  constexpr int kMaxBackground = 256;
  if (dataset.rows() > kMaxBackground) {
    background.features.clear();
    background.targets.clear();
    const int stride = (dataset.rows() + kMaxBackground - 1) / kMaxBackground;
    for (int i = 0; i < dataset.rows(); i += stride) {
      const auto row = dataset.row(i);
      background.features.insert(background.features.end(), row.begin(),
                                 row.end());
      background.targets.push_back(dataset.targets[i]);
    }
  }

  const ShapSummary summary = explain_dataset(*surrogate, background, dataset);

  std::ostringstream bar_csv;
  write_shap_bar_csv(bar_csv, shap_bar_data(summary));
  write_file(cell_dir / "shap_bar.csv", bar_csv.str());

  std::ostringstream bee_csv;
  write_shap_beeswarm_csv(bee_csv, summary);
  write_file(cell_dir / "shap_beeswarm.csv", bee_csv.str());
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
  std::vector<const ProblemSpec*> problems;
  std::vector<std::vector<RunConfig>> cell_configs;  // [problem][algorithm]
  try {
    for (const std::string& name : config.problems) {
      problems.push_back(&registry_get(name));
    }
    if (std::find(config.algorithms.begin(), config.algorithms.end(),
                  config.reference) == config.algorithms.end()) {
      throw ConfigError("config: reference algorithm '" + config.reference +
                        "' is not in the algorithms list");
    }
  } catch (const ConfigError& err) {
    log << "error: " << err.what() << '\n';
    return kExitBadConfig;
  } catch (const std::invalid_argument& err) {
    log << "error: " << err.what() << '\n';
    return kExitBadConfig;
  }

  // Build per-cell run configurations.
  try {
    cell_configs.resize(problems.size());
    for (std::size_t p = 0; p < problems.size(); ++p) {
      for (const std::string& algorithm : config.algorithms) {
        ConfigTable table;
        if (const auto it = config.algorithm_overrides.find(algorithm);
            it != config.algorithm_overrides.end()) {
          table = it->second;
        }
        cell_configs[p].push_back(
            make_run_config(algorithm, table, *problems[p]));
      }
    }
  } catch (const ConfigError& err) {
    log << "error: " << err.what() << '\n';
    return kExitBadConfig;
  }

  std::vector<Job> jobs;
  jobs.reserve(problems.size() * config.algorithms.size() * config.runs);
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      for (int run_idx = 0; run_idx < config.runs; ++run_idx) {
        RunConfig rc = cell_configs[p][a];
        rc.seed = config.base_seed + static_cast<std::uint64_t>(run_idx);
        rc.record_trace = config.trace;
        jobs.push_back({static_cast<int>(p), static_cast<int>(a), run_idx, rc});
      }
    }
  }

  std::vector<std::optional<RunResult>> results(jobs.size());
  std::atomic<std::size_t> next_job{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t idx = next_job.fetch_add(1);
      if (idx >= jobs.size() || failed.load()) break;
      const Job& job = jobs[idx];
      try {
        results[idx] = run(*problems[job.problem_idx], job.config);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };

  const int workers = std::max(1, std::min<int>(config.parallel,
                                                static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const EvaluationError& err) {
      log << "error: evaluator failure: " << err.what() << '\n';
      return kExitEvaluator;
    } catch (const std::exception& err) {
      log << "error: " << err.what() << '\n';
      return kExitEvaluator;
    }
  }

  const fs::path out_dir(config.output_dir);
  fs::create_directories(out_dir);

  // results.csv: one row per run, reported-scale objectives.
  std::ostringstream results_csv;
  results_csv << "problem,algorithm,run,seed,best_objective,violation,"
                 "feasible,evaluations\n";
  std::map<CellKey, RunSummary> summaries;
  for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
    const Job& job = jobs[idx];
    const RunResult& res = *results[idx];
    const ProblemSpec& problem = *problems[job.problem_idx];
    const double reported = problem.report_value(res.best_objective);
    const bool feasible = res.best_violation == 0.0;
    results_csv << problem.name << ',' << config.algorithms[job.algorithm_idx]
                << ',' << job.run_idx << ',' << format_uint(job.config.seed)
                << ',' << format_double(reported) << ','
                << format_double(res.best_violation) << ','
                << (feasible ? 1 : 0) << ',' << res.evaluations_used << '\n';
    RunSummary& cell = summaries[{job.problem_idx, job.algorithm_idx}];
    cell.best_objectives.push_back(reported);
    cell.violations.push_back(res.best_violation);
    cell.wall_times.push_back(res.wall_time_seconds);
    cell.feasible.push_back(feasible);
  }
  write_file(out_dir / "results.csv", results_csv.str());

  const int reference_idx = static_cast<int>(
      std::find(config.algorithms.begin(), config.algorithms.end(),
                config.reference) -
      config.algorithms.begin());

  // summary.csv: per problem x algorithm statistics against the reference.
  std::ostringstream summary_csv;
  summary_csv << "problem,algorithm,mean,std,fr,p_wilcoxon,verdict,mpii,"
                 "time_complexity\n";
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      const RunSummary& cell = summaries[{static_cast<int>(p),
                                          static_cast<int>(a)}];
      const RunSummary& ref = summaries[{static_cast<int>(p), reference_idx}];
      const SummaryStats stats = mean_std_fr(cell);
      const SummaryStats ref_stats = mean_std_fr(ref);
      const WilcoxonResult wilcoxon =
          wilcoxon_signed_rank(cell.best_objectives, ref.best_objectives);
      double mpii_value = std::numeric_limits<double>::quiet_NaN();
      if (ref_stats.mean != 1.0) {
        mpii_value = mpii(stats.mean, ref_stats.mean);
      }
      double complexity = std::numeric_limits<double>::quiet_NaN();
      try {
        complexity = timing_complexity({problems[p]}, cell_configs[p][a]);
      } catch (const std::exception&) {
        // left undefined when the budget cannot be honored
      }
      summary_csv << problems[p]->name << ',' << config.algorithms[a] << ','
                  << format_double(stats.mean) << ','
                  << format_double(stats.stddev) << ','
                  << format_double(stats.feasibility_rate) << ','
                  << format_double(wilcoxon.p_value) << ','
                  << verdict_symbol(wilcoxon.verdict) << ','
                  << format_double(mpii_value) << ','
                  << format_double(complexity) << '\n';
    }
  }
  write_file(out_dir / "summary.csv", summary_csv.str());

  // Trace CSVs plus the attribution layer, one directory per cell.
  if (config.trace) {
    std::map<CellKey, std::vector<IterationTrace>> pooled;
    for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
      const Job& job = jobs[idx];
      const RunResult& res = *results[idx];
      const fs::path cell_dir =
          out_dir / (sanitize(problems[job.problem_idx]->name) + "__" +
                     sanitize(config.algorithms[job.algorithm_idx]));
      fs::create_directories(cell_dir);
      std::ostringstream trace_csv;
      write_trace_csv(trace_csv, res.trace);
      write_file(cell_dir / ("trace_" + std::to_string(job.run_idx) + ".csv"),
                 trace_csv.str());
      auto& pool = pooled[{job.problem_idx, job.algorithm_idx}];
      pool.insert(pool.end(), res.trace.begin(), res.trace.end());
    }
    for (const auto& [key, trace] : pooled) {
      if (trace.empty()) continue;
      const fs::path cell_dir =
          out_dir / (sanitize(problems[key.problem_idx]->name) + "__" +
                     sanitize(config.algorithms[key.algorithm_idx]));
      const auto [ds1, ds2] = build_datasets(trace);
      export_explain_layer(cell_dir / "dataset1", ds1);
      export_explain_layer(cell_dir / "dataset2", ds2);
    }
  }

  log << "wrote " << (out_dir / "results.csv").string() << " ("
      << jobs.size() << " runs)\n";
  return kExitOk;
}

std::string describe_problem(const std::string& name) {
  const ProblemSpec& problem = registry_get(name);
  std::ostringstream out;
  out << problem.name << ": " << problem.description << '\n';
  out << "  dimension: " << problem.space.dim() << '\n';
  out << "  sense: "
      << (problem.sense == Sense::maximize ? "maximize" : "minimize") << '\n';
  out << "  bounds:";
  for (int d = 0; d < problem.space.dim(); ++d) {
    out << " [" << problem.space.lower()[d] << ", " << problem.space.upper()[d]
        << ']';
  }
  out << '\n';
  out << "  integer dimensions:";
  bool any_integer = false;
  for (int d = 0; d < problem.space.dim(); ++d) {
    if (problem.space.integer_mask()[d]) {
      out << ' ' << d;
      any_integer = true;
    }
  }
  if (!any_integer) out << " none";
  out << '\n';
  out << "  constraints: " << problem.constraints.inequality.size()
      << " inequality, " << problem.constraints.equality.size()
      << " equality (tolerance " << problem.space.equality_tolerance()
      << ")\n";
  if (problem.known_best) {
    out << "  known best: " << format_double(problem.known_best->value)
        << " [" << problem.known_best->citation << "]\n";
  } else {
    out << "  known best: unknown\n";
  }
  return out.str();
}

std::string list_problems() {
  std::ostringstream out;
  for (const std::string& name : registry_names()) {
    out << name << " - " << registry_get(name).description << '\n';
  }
  return out.str();
}

}  // namespace aiaefa
