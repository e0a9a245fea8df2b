#include "aiaefa/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace aiaefa {

SummaryStats mean_std_fr(const RunSummary& summary) {
  const std::size_t n = summary.best_objectives.size();
  if (n == 0) {
    throw std::invalid_argument("mean_std_fr: empty summary");
  }
  if (summary.feasible.size() != n ||
      (!summary.violations.empty() && summary.violations.size() != n) ||
      (!summary.wall_times.empty() && summary.wall_times.size() != n)) {
    throw std::invalid_argument("mean_std_fr: summary vectors must have equal length");
  }
  SummaryStats stats;
  stats.mean = std::accumulate(summary.best_objectives.begin(),
                               summary.best_objectives.end(), 0.0) /
               static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : summary.best_objectives) {
      ss += (v - stats.mean) * (v - stats.mean);
    }
    stats.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  const auto feasible_runs =
      std::count(summary.feasible.begin(), summary.feasible.end(), true);
  stats.feasibility_rate =
      100.0 * static_cast<double>(feasible_runs) / static_cast<double>(n);
  return stats;
}

double mpii(double mean_ai, double mean_other) {
  if (mean_other == 1.0) {
    throw std::domain_error("mpii: undefined for mean_other = 1");
  }
  return std::abs((mean_ai - mean_other) / (1.0 - mean_other));
}

char verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::better: return '+';
    case Verdict::equal: return '=';
    case Verdict::worse: return '-';
  }
  return '?';
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("wilcoxon_signed_rank: samples must be paired");
  }
  struct Diff {
    double magnitude;
    bool positive;
  };
  std::vector<Diff> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back({std::abs(d), d > 0.0});
  }
  const int n = static_cast<int>(diffs.size());
  if (n == 0) {
    return {0.0, 1.0, Verdict::equal, 0};
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return diffs[i].magnitude < diffs[j].magnitude;
  });

  // Average ranks within groups of tied magnitudes.
  std::vector<double> rank(n, 0.0);
  std::vector<int> tie_sizes;
  int pos = 0;
  while (pos < n) {
    int end = pos + 1;
    while (end < n &&
           diffs[order[end]].magnitude == diffs[order[pos]].magnitude) {
      ++end;
    }
    const double avg = 0.5 * static_cast<double>(pos + 1 + end);
    for (int k = pos; k < end; ++k) rank[order[k]] = avg;
    if (end - pos > 1) tie_sizes.push_back(end - pos);
    pos = end;
  }

  double w_plus = 0.0, w_minus = 0.0;
  for (int i = 0; i < n; ++i) {
    (diffs[i].positive ? w_plus : w_minus) += rank[i];
  }
  const double t_obs = std::min(w_plus, w_minus);

  double p = 1.0;
  if (n <= 25) {
    // Exact null distribution over all 2^n sign assignments, via a subset-sum
    // count on doubled ranks (average ranks are half-integers).
    std::vector<long long> doubled(n);
    long long total = 0;
    for (int i = 0; i < n; ++i) {
      doubled[i] = std::llround(2.0 * rank[i]);
      total += doubled[i];
    }
    std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
    count[0] = 1.0;
    for (long long dr : doubled) {
      for (long long s = total; s >= dr; --s) {
        count[s] += count[s - dr];
      }
    }
    const long long threshold = std::llround(2.0 * t_obs);
    double below = 0.0;
    for (long long s = 0; s <= threshold && s <= total; ++s) below += count[s];
    p = std::min(1.0, 2.0 * below / std::ldexp(1.0, n));
  } else {
    const double mean = n * (n + 1) / 4.0;
    double variance = n * (n + 1) * (2.0 * n + 1.0) / 24.0;
    for (int t : tie_sizes) {
      variance -= (static_cast<double>(t) * t * t - t) / 48.0;
    }
    if (variance <= 0.0) {
      p = 1.0;
    } else {
      const double z = std::abs(t_obs - mean) / std::sqrt(variance);
      p = std::erfc(z / std::sqrt(2.0));
    }
  }

  Verdict verdict = Verdict::equal;
  if (p < 0.05) {
    verdict = w_plus > w_minus ? Verdict::better : Verdict::worse;
  }
  return {t_obs, p, verdict, n};
}

double t_test(std::span<const double> a, std::span<const double> b) {
  const std::size_t na = a.size(), nb = b.size();
  if (na < 2 || nb < 2) {
    throw std::invalid_argument("t_test: each sample needs at least 2 values");
  }
  auto mean_var = [](std::span<const double> s) {
    const double m =
        std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    double ss = 0.0;
    for (double v : s) ss += (v - m) * (v - m);
    return std::pair{m, ss / static_cast<double>(s.size() - 1)};
  };
  const auto [ma, va] = mean_var(a);
  const auto [mb, vb] = mean_var(b);
  const double sa = va / static_cast<double>(na);
  const double sb = vb / static_cast<double>(nb);
  if (sa + sb == 0.0) {
    return ma == mb ? 1.0 : 0.0;
  }
  const double t = (ma - mb) / std::sqrt(sa + sb);
  const double df = (sa + sb) * (sa + sb) /
                    (sa * sa / static_cast<double>(na - 1) +
                     sb * sb / static_cast<double>(nb - 1));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double timing_complexity(const std::vector<const ProblemSpec*>& problems,
                         const RunConfig& algorithm, long long fe_budget) {
  if (problems.empty()) {
    throw std::invalid_argument("timing_complexity: empty problem set");
  }
  if (fe_budget < algorithm.population_size) {
    throw std::invalid_argument("timing_complexity: budget below one population");
  }
  using clock = std::chrono::steady_clock;
  double t1_total = 0.0, t2_total = 0.0;
  volatile double sink = 0.0;

  for (const ProblemSpec* problem : problems) {
    const SearchSpace& space = problem->space;
    RngStream rng(0x5eed);
    std::vector<double> x(space.dim());
    auto draw_and_eval = [&] {
      for (int d = 0; d < space.dim(); ++d) {
        x[d] = rng.uniform(space.lower()[d], space.upper()[d]);
        if (space.integer_mask()[d]) x[d] = std::round(x[d]);
      }
      sink = sink + problem->objective(x) +
             violation_degree(problem->constraints, x,
                              space.equality_tolerance());
    };
    const long long warmup = std::min<long long>(1000, fe_budget);
    for (long long i = 0; i < warmup; ++i) draw_and_eval();

    const auto bare_start = clock::now();
    for (long long i = 0; i < fe_budget; ++i) draw_and_eval();
    t1_total += std::chrono::duration<double>(clock::now() - bare_start).count();

    RunConfig timed = algorithm;
    timed.max_evaluations = fe_budget;
    timed.max_iterations =
        static_cast<int>(std::max<long long>(1, fe_budget));
    timed.record_trace = false;

    RunConfig warm = timed;
    warm.max_evaluations = 2LL * timed.population_size;
    warm.max_iterations = 1;
    run(*problem, warm);

    const auto full_start = clock::now();
    run(*problem, timed);
    t2_total += std::chrono::duration<double>(clock::now() - full_start).count();
  }

  const double t1 = t1_total / static_cast<double>(problems.size());
  const double t2 = t2_total / static_cast<double>(problems.size());
  if (t1 <= 0.0) {
    throw std::runtime_error("timing_complexity: non-positive base time");
  }
  return (t2 - t1) / t1;
}

}  // namespace aiaefa
