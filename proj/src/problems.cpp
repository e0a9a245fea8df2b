#include "aiaefa/problems.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace aiaefa {

double RraSystem::volume_used(std::span<const double> n) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    total += volume_coeff[i] * n[i] * n[i];
  }
  return total;
}

double RraSystem::cost_used(std::span<const double> r,
                            std::span<const double> n) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double component =
        cost_alpha[i] * std::pow(-operating_time / std::log(r[i]), cost_beta[i]);
    total += component * (n[i] + std::exp(n[i] / 4.0));
  }
  return total;
}

double RraSystem::weight_used(std::span<const double> n) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    total += weight_coeff[i] * n[i] * std::exp(n[i] / 4.0);
  }
  return total;
}

double rra_reliability(const RraSystem& system, std::span<const double> r,
                       std::span<const double> n) {
  if (r.size() != n.size() || r.empty()) {
    throw std::invalid_argument("rra_reliability: r and n sizes must match");
  }
  if ((system.topology == RraTopology::series_parallel ||
       system.topology == RraTopology::bridge) &&
      r.size() != 5) {
    throw std::invalid_argument(
        "rra_reliability: series-parallel/bridge topologies take 5 subsystems");
  }
  std::vector<double> sub(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(r[i] < 1.0)) {
      throw std::invalid_argument("rra_reliability: component reliability out of (0,1)");
    }
    if (n[i] < 1.0) {
      throw std::invalid_argument("rra_reliability: redundancy level below 1");
    }
    sub[i] = 1.0 - std::pow(1.0 - r[i], n[i]);
  }
  switch (system.topology) {
    case RraTopology::series: {
      double total = 1.0;
      for (double s : sub) total *= s;
      return total;
    }
    case RraTopology::series_parallel: {
      const double branch = (sub[2] + sub[3] - sub[2] * sub[3]) * sub[4];
      return 1.0 - (1.0 - sub[0] * sub[1]) * (1.0 - branch);
    }
    case RraTopology::bridge: {
      const double r1 = sub[0], r2 = sub[1], r3 = sub[2], r4 = sub[3],
                   r5 = sub[4];
      return r1 * r2 + r3 * r4 + r1 * r4 * r5 + r2 * r3 * r5 -
             r1 * r2 * r3 * r4 - r1 * r2 * r3 * r5 - r1 * r2 * r4 * r5 -
             r1 * r3 * r4 * r5 - r2 * r3 * r4 * r5 +
             2.0 * r1 * r2 * r3 * r4 * r5;
    }
  }
  throw std::logic_error("rra_reliability: unknown topology");
}

namespace {

ProblemSpec make_sphere() {
  return ProblemSpec{
      "sphere",
      "Unconstrained 2-D sphere, optimum 0 at the origin",
      SearchSpace::box(2, -100.0, 100.0),
      [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; },
      {},
      KnownBest{0.0, {0.0, 0.0}, "analytic optimum"},
      Sense::minimize,
      PositionMode::continuous};
}

ProblemSpec make_toy_quadratic() {
  ConstraintSet cs;
  cs.inequality.push_back(
      [](std::span<const double> x) { return x[0] + x[1] - 2.0; });
  return ProblemSpec{
      "toy-quadratic",
      "min (x1-2)^2 + (x2-2)^2 subject to x1 + x2 <= 2; optimum 2 at (1,1)",
      SearchSpace::box(2, -10.0, 10.0),
      [](std::span<const double> x) {
        return (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 2.0) * (x[1] - 2.0);
      },
      std::move(cs),
      KnownBest{2.0, {1.0, 1.0}, "analytic (KKT) optimum"},
      Sense::minimize,
      PositionMode::continuous};
}

ProblemSpec make_rosenbrock_disk() {
  ConstraintSet cs;
  cs.inequality.push_back(
      [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] - 2.0; });
  return ProblemSpec{
      "rosenbrock-disk",
      "Rosenbrock function restricted to the disk x1^2 + x2^2 <= 2",
      SearchSpace::box(2, -1.5, 1.5),
      [](std::span<const double> x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
      },
      std::move(cs),
      KnownBest{0.0, {1.0, 1.0}, "analytic optimum"},
      Sense::minimize,
      PositionMode::continuous};
}

ProblemSpec make_sphere_eq() {
  ConstraintSet cs;
  cs.equality.push_back(
      [](std::span<const double> x) { return x[0] + x[1] - 1.0; });
  return ProblemSpec{
      "sphere-eq",
      "min x1^2 + x2^2 subject to x1 + x2 = 1; optimum 0.5 at (0.5, 0.5)",
      SearchSpace::box(2, -5.0, 5.0),
      [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; },
      std::move(cs),
      KnownBest{0.5, {0.5, 0.5}, "analytic optimum"},
      Sense::minimize,
      PositionMode::continuous};
}

// Classic five-subsystem mixed-integer data sets (Hikita et al. 1992 family).
RraSystem series_system() {
  return RraSystem{RraTopology::series,
                   {2.330e-5, 1.450e-5, 0.541e-5, 8.050e-5, 1.950e-5},
                   {1.5, 1.5, 1.5, 1.5, 1.5},
                   {1.0, 2.0, 3.0, 4.0, 2.0},
                   {7.0, 8.0, 8.0, 6.0, 9.0},
                   110.0,
                   175.0,
                   200.0};
}

RraSystem series_parallel_system() {
  return RraSystem{RraTopology::series_parallel,
                   {2.500e-5, 1.450e-5, 0.541e-5, 0.541e-5, 2.100e-5},
                   {1.5, 1.5, 1.5, 1.5, 1.5},
                   {2.0, 4.0, 5.0, 8.0, 4.0},
                   {3.5, 4.0, 4.0, 3.5, 4.5},
                   180.0,
                   175.0,
                   100.0};
}

RraSystem bridge_system() {
  RraSystem sys = series_system();
  sys.topology = RraTopology::bridge;
  return sys;
}

RraSystem overspeed_system() {
  return RraSystem{RraTopology::series,
                   {1.0e-5, 2.3e-5, 0.3e-5, 2.3e-5},
                   {1.5, 1.5, 1.5, 1.5},
                   {1.0, 2.0, 3.0, 2.0},
                   {6.0, 6.0, 8.0, 7.0},
                   250.0,
                   400.0,
                   500.0};
}

/// Mixed-integer RRA problem over x = [r_1..r_s, n_1..n_s].
ProblemSpec make_rra_mixed(std::string name, std::string description,
                           RraSystem system, KnownBest best) {
  const int s = system.subsystems();
  std::vector<double> lower(2 * s), upper(2 * s);
  std::vector<bool> mask(2 * s, false);
  for (int i = 0; i < s; ++i) {
    lower[i] = 0.5;
    upper[i] = 1.0 - 1e-6;
    lower[s + i] = 1.0;
    upper[s + i] = 10.0;
    mask[s + i] = true;
  }
  auto split_r = [s](std::span<const double> x) { return x.subspan(0, s); };
  auto split_n = [s](std::span<const double> x) { return x.subspan(s, s); };

  ConstraintSet cs;
  cs.inequality.push_back([system, split_n](std::span<const double> x) {
    return system.volume_used(split_n(x)) - system.volume_limit;
  });
  cs.inequality.push_back(
      [system, split_r, split_n](std::span<const double> x) {
        return system.cost_used(split_r(x), split_n(x)) - system.cost_limit;
      });
  cs.inequality.push_back([system, split_n](std::span<const double> x) {
    return system.weight_used(split_n(x)) - system.weight_limit;
  });

  return ProblemSpec{
      std::move(name),
      std::move(description),
      SearchSpace(std::move(lower), std::move(upper), std::move(mask)),
      [system, split_r, split_n](std::span<const double> x) {
        return -rra_reliability(system, split_r(x), split_n(x));
      },
      std::move(cs),
      std::move(best),
      Sense::maximize,
      PositionMode::mixed};
}

ProblemSpec make_rra_series() {
  return make_rra_mixed(
      "rra-series",
      "Five-subsystem series RRA (volume/cost/weight constrained), "
      "mixed-integer",
      series_system(),
      KnownBest{0.9316823876,
                {0.779398881298, 0.871837011752, 0.902885356640,
                 0.711402518650, 0.787799484754, 3, 2, 2, 3, 3},
                "Hikita et al. (1992) data; best known 0.931682 "
                "(Hsieh & You 2011; Kundu et al. 2022)"});
}

ProblemSpec make_rra_series_parallel() {
  return make_rra_mixed(
      "rra-series-parallel",
      "Five-subsystem series-parallel RRA, mixed-integer",
      series_parallel_system(),
      KnownBest{0.9999766491,
                {0.819659048401, 0.844980235928, 0.895506458883,
                 0.895506720381, 0.868447870432, 2, 2, 2, 2, 4},
                "Hikita et al. (1992) data; best known 0.99997665 "
                "(Hsieh & You 2011)"});
}

ProblemSpec make_rra_bridge() {
  return make_rra_mixed(
      "rra-bridge",
      "Five-subsystem complex bridge RRA, mixed-integer",
      bridge_system(),
      KnownBest{0.9998896375,
                {0.828087197017, 0.857805491063, 0.914240283820,
                 0.648144794927, 0.704161485844, 3, 3, 2, 4, 1},
                "Hikita et al. (1992) data; best known 0.99988964 "
                "(Hsieh & You 2011)"});
}

ProblemSpec make_rra_overspeed() {
  return make_rra_mixed(
      "rra-overspeed",
      "Gas-turbine overspeed protection RRA (four subsystems), mixed-integer",
      overspeed_system(),
      KnownBest{0.9999546747,
                {0.901614699854, 0.849921242034, 0.948141387793,
                 0.888222848155, 5, 6, 4, 5},
                "Dhingra (1992) data; best known 0.99995467 "
                "(Yokota et al. 1996; Kundu et al. 2022)"});
}

/// Pure-integer 15-unit series redundancy allocation (component
/// reliabilities fixed, linear cost/weight constraints).
ProblemSpec make_rra_series_15() {
  static const std::vector<double> reliab = {0.90, 0.75, 0.65, 0.80, 0.85,
                                             0.93, 0.78, 0.66, 0.78, 0.91,
                                             0.79, 0.77, 0.67, 0.79, 0.67};
  static const std::vector<double> cost = {5, 4, 9, 7, 7, 5, 6, 9,
                                           4, 5, 6, 7, 9, 8, 6};
  static const std::vector<double> weight = {8, 9, 6, 7, 8, 8, 9, 6,
                                             7, 8, 9, 7, 6, 5, 7};
  const RraSystem composition{RraTopology::series};
  ConstraintSet cs;
  cs.inequality.push_back([](std::span<const double> n) {
    double total = 0.0;
    for (int i = 0; i < 15; ++i) total += cost[i] * n[i];
    return total - 400.0;
  });
  cs.inequality.push_back([](std::span<const double> n) {
    double total = 0.0;
    for (int i = 0; i < 15; ++i) total += weight[i] * n[i];
    return total - 414.0;
  });
  return ProblemSpec{
      "rra-series-15",
      "Fifteen-unit series redundancy allocation, pure integer "
      "(fixed component reliabilities, linear cost/weight limits)",
      SearchSpace(std::vector<double>(15, 1.0), std::vector<double>(15, 6.0),
                  std::vector<bool>(15, true)),
      [composition](std::span<const double> n) {
        return -rra_reliability(composition, reliab, n);
      },
      std::move(cs),
      KnownBest{0.9456133572,
                {3, 4, 6, 4, 3, 2, 4, 5, 4, 2, 3, 4, 5, 4, 5},
                "Luus (1975) data; best known 0.945613 (Zou et al. 2011)"},
      Sense::maximize,
      PositionMode::integer_only};
}

std::map<std::string, ProblemSpec>& registry() {
  static std::map<std::string, ProblemSpec> problems = [] {
    std::map<std::string, ProblemSpec> m;
    for (auto&& spec :
         {make_sphere(), make_toy_quadratic(), make_rosenbrock_disk(),
          make_sphere_eq(), make_rra_series(), make_rra_series_parallel(),
          make_rra_bridge(), make_rra_overspeed(), make_rra_series_15()}) {
      m.emplace(spec.name, std::move(spec));
    }
    return m;
  }();
  return problems;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const ProblemSpec& registry_get(const std::string& name) {
  std::lock_guard lock(registry_mutex());
  const auto& problems = registry();
  const auto it = problems.find(name);
  if (it == problems.end()) {
    std::ostringstream msg;
    msg << "unknown problem '" << name << "'; registered problems:";
    for (const auto& [key, _] : problems) msg << ' ' << key;
    throw std::invalid_argument(msg.str());
  }
  return it->second;
}

std::vector<std::string> registry_names() {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> names;
  names.reserve(registry().size());
  for (const auto& [key, _] : registry()) names.push_back(key);
  return names;
}

void register_problem(ProblemSpec spec) {
  std::lock_guard lock(registry_mutex());
  auto& problems = registry();
  const std::string name = spec.name;
  if (name.empty()) {
    throw std::invalid_argument("register_problem: problem needs a name");
  }
  if (!problems.emplace(name, std::move(spec)).second) {
    throw std::invalid_argument("register_problem: '" + name +
                                "' is already registered");
  }
}

}  // namespace aiaefa
