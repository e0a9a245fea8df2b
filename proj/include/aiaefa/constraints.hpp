#pragma once

#include <compare>
#include <functional>
#include <span>
#include <vector>

#include "aiaefa/core.hpp"

namespace aiaefa {

using ConstraintFn = std::function<double(std::span<const double>)>;

/// Inequality constraints are feasible when g(x) <= 0, equality constraints
/// when |h(x)| <= epsilon.
struct ConstraintSet {
  std::vector<ConstraintFn> inequality;
  std::vector<ConstraintFn> equality;

  int size() const {
    return static_cast<int>(inequality.size() + equality.size());
  }
  bool empty() const { return size() == 0; }
};

/// Mean violation degree: (sum G_i + sum H_j) / n with G_i = max(g_i, 0) and
/// H_j = |h_j| when |h_j| - epsilon > 0, else 0. Unconstrained problems
/// return 0 (feasible by convention).
double violation_degree(const ConstraintSet& cs, std::span<const double> x,
                        double epsilon);

struct FitnessRecord {
  double objective = 0.0;
  double violation = 0.0;
  bool feasible() const { return violation == 0.0; }
};

/// Feasibility-rule ordering: feasible before infeasible; among feasible,
/// lower objective; among infeasible, lower violation. Exact ties are
/// equivalent.
std::weak_ordering feasibility_compare(const FitnessRecord& a,
                                       const FitnessRecord& b);

/// True when a strictly precedes b under the feasibility rules.
bool precedes(const FitnessRecord& a, const FitnessRecord& b);

/// Stable sort: feasible block ascending by objective, then infeasible block
/// ascending by violation.
void sort_population(std::vector<Agent>& agents);

}  // namespace aiaefa
