#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aiaefa/constraints.hpp"
#include "aiaefa/core.hpp"
#include "aiaefa/explain.hpp"
#include "aiaefa/problems.hpp"
#include "aiaefa/schedule.hpp"

namespace aiaefa {

/// Per-run optimizer settings. Defaults follow the published tuning
/// (K0=500, beta=6, delta=300, N=30) with the budget pairing
/// max_evaluations = 500*N.
struct RunConfig {
  int population_size = 30;
  int max_iterations = 500;
  long long max_evaluations = 15000;
  CoulombSchedule schedule{};
  double velocity_bound_fraction = 0.5;
  KbestMode kbest_mode = KbestMode::linear_n_to_2;
  std::uint64_t seed = 1;
  double force_epsilon = 1e-10;
  bool record_trace = false;
};

struct ForceField {
  double epsilon_force = 1e-10;
  int kbest_size = 2;
  double mass = 1.0;
};

struct RunResult {
  std::vector<double> best_position;
  double best_objective = 0.0;  // internal (minimization) scale
  double best_violation = 0.0;
  long long evaluations_used = 0;
  std::vector<IterationTrace> trace;
  double wall_time_seconds = 0.0;
};

/// Raised when a problem evaluator returns a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(int agent, int iteration, const std::string& what);
  int agent() const { return agent_; }
  int iteration() const { return iteration_; }

 private:
  int agent_;
  int iteration_;
};

/// Fitness-derived charges: q_i = exp((fit_i - max)/(min - max)) normalized
/// to sum 1. A population with equal objectives gets the uniform 1/N charge.
std::vector<double> compute_charges(std::span<const double> objectives);

/// Total per-dimension force on every agent from the kbest attractor set,
/// divided by the unit mass (so the result is also the acceleration).
/// One uniform draw per (i, j) pair, shared across dimensions; draws are
/// consumed with i ascending, then j ascending.
template <class Rng>
std::vector<std::vector<double>> compute_forces(
    const std::vector<Agent>& agents, std::span<const double> charges,
    double coulomb_k, const ForceField& field, std::span<const int> kbest,
    Rng& rng) {
  const int n = static_cast<int>(agents.size());
  const int dim = n > 0 ? static_cast<int>(agents[0].position.size()) : 0;
  std::vector<std::vector<double>> accel(n, std::vector<double>(dim, 0.0));
  for (int i = 0; i < n; ++i) {
    const auto& xi = agents[i].position;
    for (int j : kbest) {
      if (j == i) continue;
      const double rand_j = rng.uniform01();
      const auto& xj = agents[j].position;
      double dist_sq = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double diff = xj[d] - xi[d];
        dist_sq += diff * diff;
      }
      const double dist = std::sqrt(dist_sq);
      const double scale =
          rand_j * coulomb_k * charges[i] * charges[j] /
          (dist + field.epsilon_force);
      for (int d = 0; d < dim; ++d) {
        accel[i][d] += scale * (xj[d] - xi[d]);
      }
    }
    if (field.mass != 1.0) {
      for (double& a : accel[i]) a /= field.mass;
    }
  }
  return accel;
}

/// v' = rand()*v + a per dimension (one fresh draw each, d ascending),
/// clamped to the velocity box.
template <class Rng>
std::vector<double> update_velocity(const SearchSpace& space,
                                    const Agent& agent,
                                    std::span<const double> acceleration,
                                    double fraction, Rng& rng) {
  const int dim = space.dim();
  std::vector<double> v(dim);
  for (int d = 0; d < dim; ++d) {
    v[d] = rng.uniform01() * agent.velocity[d] + acceleration[d];
  }
  return clamp_velocity(space, v, fraction);
}

/// x' = x + v, with round-half-away-from-zero on the integer-masked
/// dimensions (mode mixed) or on all dimensions (mode integer_only), then
/// clamped into the box.
std::vector<double> update_position(const SearchSpace& space,
                                    const Agent& agent, PositionMode mode);

/// True when the new entry is kept: it strictly precedes the old one under
/// the feasibility rules, or ties with it.
bool greedy_keep_new(const FitnessRecord& old_entry,
                     const FitnessRecord& new_entry);

/// Feasibility-rule greedy selection between an agent's old and new entry.
const Agent& greedy_replace(const Agent& old_entry, const Agent& new_entry);

/// Optional per-iteration hook; receives the population after greedy
/// replacement and the current elite.
using IterationObserver =
    std::function<void(int iteration, const std::vector<Agent>& population,
                       const Agent& elite)>;

/// Full optimization loop (evaluate, sort, Coulomb constant, charges,
/// forces, bounded velocity/position updates, greedy replacement, elite
/// tracking) until max_iterations or max_evaluations is exhausted.
RunResult run(const ProblemSpec& problem, const RunConfig& config,
              const IterationObserver& observer = {});

}  // namespace aiaefa
