#include "aiaefa/constraints.hpp"

#include <algorithm>
#include <cmath>

namespace aiaefa {

double violation_degree(const ConstraintSet& cs, std::span<const double> x,
                        double epsilon) {
  const int n = cs.size();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (const auto& g : cs.inequality) {
    sum += std::max(g(x), 0.0);
  }
  for (const auto& h : cs.equality) {
    const double abs_h = std::abs(h(x));
    if (abs_h - epsilon > 0.0) sum += abs_h;
  }
  return sum / n;
}

std::weak_ordering feasibility_compare(const FitnessRecord& a,
                                       const FitnessRecord& b) {
  if (a.feasible() != b.feasible()) {
    return a.feasible() ? std::weak_ordering::less
                        : std::weak_ordering::greater;
  }
  const double ka = a.feasible() ? a.objective : a.violation;
  const double kb = b.feasible() ? b.objective : b.violation;
  if (ka < kb) return std::weak_ordering::less;
  if (ka > kb) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

bool precedes(const FitnessRecord& a, const FitnessRecord& b) {
  return feasibility_compare(a, b) == std::weak_ordering::less;
}

void sort_population(std::vector<Agent>& agents) {
  std::stable_sort(agents.begin(), agents.end(),
                   [](const Agent& a, const Agent& b) {
                     return precedes({a.objective, a.violation},
                                     {b.objective, b.violation});
                   });
}

}  // namespace aiaefa
