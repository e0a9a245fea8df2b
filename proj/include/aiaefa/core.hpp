#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aiaefa {

/// Box-constrained search space with an optional integer mask per dimension
/// and the tolerance used to relax equality constraints into inequalities.
class SearchSpace {
 public:
  SearchSpace(std::vector<double> lower, std::vector<double> upper,
              std::vector<bool> integer_mask = {},
              double equality_tolerance = 1e-4);

  int dim() const { return static_cast<int>(lower_.size()); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<bool>& integer_mask() const { return integer_mask_; }
  double equality_tolerance() const { return equality_tolerance_; }
  bool has_integer_dims() const;

  /// Convenience: a continuous [lo, hi]^dim box.
  static SearchSpace box(int dim, double lo, double hi,
                         double equality_tolerance = 1e-4);

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> integer_mask_;
  double equality_tolerance_;
};

/// How position updates treat dimensions (the mixed-integer switch).
enum class PositionMode { continuous, mixed, integer_only };

struct Agent {
  std::vector<double> position;
  std::vector<double> velocity;
  double charge = 0.0;
  double objective = 0.0;
  double violation = 0.0;
  bool feasible = false;
};

/// Seeded uniform stream. Identical seed + identical call sequence gives
/// bit-identical draws; uniform01 avoids std::uniform_real_distribution so
/// sequences are stable across standard library implementations.
///
/// Draw-order contract used by the engine, per iteration:
///   1. force phase: one draw per (i ascending, j ascending over kbest, j != i)
///   2. velocity phase: one draw per (i ascending, d ascending)
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  /// Uniform draw in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

enum class KbestMode { linear_n_to_2, all_agents };
enum class ScheduleKind { exponential, chaotic_sigmoid };

std::vector<double> clamp_position(const SearchSpace& space,
                                   std::span<const double> position);

/// Clamps each component to [-fraction*(ub-lb), +fraction*(ub-lb)].
std::vector<double> clamp_velocity(const SearchSpace& space,
                                   std::span<const double> velocity,
                                   double fraction);

}  // namespace aiaefa
