#include "aiaefa/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace aiaefa {

EvaluationError::EvaluationError(int agent, int iteration,
                                 const std::string& what)
    : std::runtime_error(what), agent_(agent), iteration_(iteration) {}

std::vector<double> compute_charges(std::span<const double> objectives) {
  const int n = static_cast<int>(objectives.size());
  if (n < 1) {
    throw std::invalid_argument("compute_charges: empty population");
  }
  const auto [min_it, max_it] =
      std::minmax_element(objectives.begin(), objectives.end());
  const double lo = *min_it;
  const double hi = *max_it;
  std::vector<double> q(n, 1.0);
  if (lo != hi) {
    for (int i = 0; i < n; ++i) {
      q[i] = std::exp((objectives[i] - hi) / (lo - hi));
    }
  }
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  for (double& qi : q) qi /= total;
  return q;
}

namespace {

void round_masked(const SearchSpace& space, PositionMode mode,
                  std::vector<double>& x) {
  if (mode == PositionMode::continuous) return;
  for (int d = 0; d < space.dim(); ++d) {
    if (mode == PositionMode::integer_only || space.integer_mask()[d]) {
      x[d] = std::round(x[d]);
    }
  }
}

int kbest_size(KbestMode mode, int n, int l, int l_max) {
  if (mode == KbestMode::all_agents) return n;
  const double shrunk = n - (n - 2) * static_cast<double>(l) / l_max;
  return std::max(2, static_cast<int>(std::floor(shrunk)));
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> update_position(const SearchSpace& space,
                                    const Agent& agent, PositionMode mode) {
  std::vector<double> x(space.dim());
  for (int d = 0; d < space.dim(); ++d) {
    x[d] = agent.position[d] + agent.velocity[d];
  }
  round_masked(space, mode, x);
  return clamp_position(space, x);
}

bool greedy_keep_new(const FitnessRecord& old_entry,
                     const FitnessRecord& new_entry) {
  return !precedes(old_entry, new_entry);
}

const Agent& greedy_replace(const Agent& old_entry, const Agent& new_entry) {
  return greedy_keep_new({old_entry.objective, old_entry.violation},
                         {new_entry.objective, new_entry.violation})
             ? new_entry
             : old_entry;
}

RunResult run(const ProblemSpec& problem, const RunConfig& config,
              const IterationObserver& observer) {
  if (config.population_size < 2) {
    throw std::invalid_argument("run: population_size must be >= 2");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("run: max_iterations must be >= 1");
  }
  if (config.max_evaluations < config.population_size) {
    throw std::invalid_argument("run: max_evaluations must be >= population_size");
  }
  if (!problem.objective) {
    throw std::invalid_argument("run: problem has no objective");
  }

  const auto t_start = std::chrono::steady_clock::now();
  const SearchSpace& space = problem.space;
  const int n = config.population_size;
  const int dim = space.dim();
  const int l_max = config.max_iterations;

  RngStream rng(config.seed);
  CoulombSchedule schedule = config.schedule;  // chaotic state owned by this run

  auto evaluate = [&](std::span<const double> x, int agent,
                      int iteration) -> FitnessRecord {
    const double obj = problem.objective(x);
    const double vio = violation_degree(problem.constraints, x,
                                        space.equality_tolerance());
    if (!std::isfinite(obj) || !std::isfinite(vio)) {
      throw EvaluationError(
          agent, iteration,
          "evaluator returned a non-finite value for agent " +
              std::to_string(agent) + " at iteration " +
              std::to_string(iteration));
    }
    return {obj, vio};
  };

  std::vector<Agent> agents(n);
  for (int i = 0; i < n; ++i) {
    Agent& a = agents[i];
    a.position.resize(dim);
    a.velocity.assign(dim, 0.0);
    for (int d = 0; d < dim; ++d) {
      a.position[d] = rng.uniform(space.lower()[d], space.upper()[d]);
    }
    round_masked(space, problem.position_mode, a.position);
    a.position = clamp_position(space, a.position);
  }

  long long evaluations = 0;
  for (int i = 0; i < n; ++i) {
    const FitnessRecord fit = evaluate(agents[i].position, i, 0);
    agents[i].objective = fit.objective;
    agents[i].violation = fit.violation;
    agents[i].feasible = fit.feasible();
  }
  evaluations += n;

  auto best_index = [&]() {
    int best = 0;
    for (int i = 1; i < n; ++i) {
      if (precedes({agents[i].objective, agents[i].violation},
                   {agents[best].objective, agents[best].violation})) {
        best = i;
      }
    }
    return best;
  };

  Agent elite = agents[best_index()];

  RunResult result;
  if (config.record_trace) result.trace.reserve(l_max);

  int iteration = 0;
  while (iteration < l_max && evaluations + n <= config.max_evaluations) {
    const int l = ++iteration;

    sort_population(agents);

    const double coulomb = schedule.next(l, l_max);

    std::vector<double> objectives(n);
    for (int i = 0; i < n; ++i) objectives[i] = agents[i].objective;
    const std::vector<double> charges = compute_charges(objectives);
    for (int i = 0; i < n; ++i) agents[i].charge = charges[i];

    const int k_size = kbest_size(config.kbest_mode, n, l, l_max);
    std::vector<int> kbest(k_size);
    std::iota(kbest.begin(), kbest.end(), 0);

    const ForceField field{config.force_epsilon, k_size, 1.0};
    const auto accel =
        compute_forces(agents, charges, coulomb, field, kbest, rng);

    // Best agent at force time (sorted index 0) feeds the trace.
    const double q_best = charges[0];
    const double a_norm = norm(accel[0]);
    const double e_norm = a_norm * field.mass;

    for (int i = 0; i < n; ++i) {
      agents[i].velocity = update_velocity(
          space, agents[i], accel[i], config.velocity_bound_fraction, rng);
    }

    for (int i = 0; i < n; ++i) {
      std::vector<double> candidate =
          update_position(space, agents[i], problem.position_mode);
      const FitnessRecord fit = evaluate(candidate, i, l);
      if (greedy_keep_new({agents[i].objective, agents[i].violation}, fit)) {
        agents[i].position = std::move(candidate);
        agents[i].objective = fit.objective;
        agents[i].violation = fit.violation;
        agents[i].feasible = fit.feasible();
      }
    }
    evaluations += n;

    const int best = best_index();
    if (precedes({agents[best].objective, agents[best].violation},
                 {elite.objective, elite.violation})) {
      elite = agents[best];
    }

    if (config.record_trace) {
      result.trace.push_back({l, coulomb, q_best, a_norm, e_norm,
                              elite.objective, norm(elite.position)});
    }
    if (observer) observer(l, agents, elite);
  }

  result.best_position = elite.position;
  result.best_objective = elite.objective;
  result.best_violation = elite.violation;
  result.evaluations_used = evaluations;
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

}  // namespace aiaefa
