#pragma once

#include <span>
#include <string>
#include <vector>

#include "aiaefa/engine.hpp"
#include "aiaefa/problems.hpp"

namespace aiaefa {

/// Per-run outcomes of one (problem, algorithm) cell; vectors are indexed by
/// run and must have equal length.
struct RunSummary {
  std::vector<double> best_objectives;
  std::vector<double> violations;
  std::vector<double> wall_times;
  std::vector<bool> feasible;
};

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;             // sample (n-1); 0 for a single run
  double feasibility_rate = 0.0;   // percent of feasible runs
};

SummaryStats mean_std_fr(const RunSummary& summary);

/// Maximum possible improvement index |(mean_a - mean_b)/(1 - mean_b)|.
double mpii(double mean_ai, double mean_other);

enum class Verdict { better, equal, worse };
char verdict_symbol(Verdict v);

struct WilcoxonResult {
  double statistic = 0.0;  // min(W+, W-)
  double p_value = 1.0;
  Verdict verdict = Verdict::equal;
  int n_used = 0;          // pairs remaining after dropping zero differences
};

/// Two-sided paired signed-rank test. Zero differences are dropped, tied
/// absolute differences get average ranks. Exact p by enumeration over sign
/// assignments for n <= 25, normal approximation with tie correction above.
/// Verdict: p < 0.05 resolves better/worse by the signed-rank direction of
/// a - b, otherwise equal.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b);

/// Two-sided Welch t-test p-value.
double t_test(std::span<const double> a, std::span<const double> b);

/// CEC-style complexity: T1 = mean bare-evaluation time per problem at
/// fe_budget evaluations, T2 = mean full-run time at the same budget;
/// returns (T2 - T1)/T1. Single-threaded, with excluded warm-up.
double timing_complexity(const std::vector<const ProblemSpec*>& problems,
                         const RunConfig& algorithm,
                         long long fe_budget = 10000);

}  // namespace aiaefa
