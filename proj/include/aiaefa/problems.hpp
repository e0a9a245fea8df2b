#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aiaefa/constraints.hpp"
#include "aiaefa/core.hpp"

namespace aiaefa {

enum class Sense { minimize, maximize };

struct KnownBest {
  double value = 0.0;  // reported scale (un-negated for maximization)
  std::vector<double> decision;
  std::string citation;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Immutable problem definition. The stored objective is always a
/// minimization target; maximization problems are negated internally and
/// report_value() restores the published scale.
struct ProblemSpec {
  std::string name;
  std::string description;
  SearchSpace space;
  ObjectiveFn objective;
  ConstraintSet constraints;
  std::optional<KnownBest> known_best;
  Sense sense = Sense::minimize;
  PositionMode position_mode = PositionMode::continuous;

  double report_value(double internal) const {
    return sense == Sense::maximize ? -internal : internal;
  }
  double internal_value(double reported) const {
    return sense == Sense::maximize ? -reported : reported;
  }
};

/// Looks up a registered problem; unknown names raise std::invalid_argument
/// whose message lists the registry contents.
const ProblemSpec& registry_get(const std::string& name);

std::vector<std::string> registry_names();

/// Compiled-in extension point for user problems (see README).
void register_problem(ProblemSpec spec);

// ---------------------------------------------------------------------------
// Reliability-redundancy allocation
// ---------------------------------------------------------------------------

enum class RraTopology { series, series_parallel, bridge };

/// Active-redundancy system: subsystem reliability 1-(1-r_i)^(n_i) composed
/// through the topology, with the classic volume / cost / weight resource
/// model. Coefficient vectors are per subsystem.
struct RraSystem {
  RraTopology topology = RraTopology::series;
  std::vector<double> cost_alpha;
  std::vector<double> cost_beta;
  std::vector<double> volume_coeff;  // multiplies n_i^2
  std::vector<double> weight_coeff;  // multiplies n_i * exp(n_i/4)
  double volume_limit = 0.0;
  double cost_limit = 0.0;
  double weight_limit = 0.0;
  double operating_time = 1000.0;

  int subsystems() const { return static_cast<int>(cost_alpha.size()); }

  double volume_used(std::span<const double> n) const;
  double cost_used(std::span<const double> r, std::span<const double> n) const;
  double weight_used(std::span<const double> n) const;
};

/// System reliability for component reliabilities r in (0,1)^s and integer
/// redundancy levels n >= 1 (passed as exact-integer doubles).
double rra_reliability(const RraSystem& system, std::span<const double> r,
                       std::span<const double> n);

}  // namespace aiaefa
