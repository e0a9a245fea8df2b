#pragma once

#include "aiaefa/core.hpp"

namespace aiaefa {

/// Original exponentially decaying Coulomb constant, K0 * exp(-alpha*l/lmax).
struct ExponentialK {
  double k0 = 500.0;
  double alpha = 30.0;
};

/// Log-sigmoid Coulomb constant, K0 / (1 + exp(beta*(l - lmax/2)/delta)).
/// Holds a high value for the first half of the run before decaying.
struct SigmoidK {
  double k0 = 500.0;
  double beta = 6.0;
  double delta = 300.0;
};

/// State of the sine map k1 <- (r/4)*sin(pi*k1) plus the normalization
/// envelope: map range [r1, r2], envelope endpoints a > b > 0.
struct ChaoticState {
  double k1 = 0.7;
  double r = 4.0;
  double r1 = 0.0;
  double r2 = 1.0;
  double a = 20.0;
  double b = 1e-10;
};

double exponential_k(const ExponentialK& sched, int l, int l_max);
double sigmoid_k(const SigmoidK& sched, int l, int l_max);

/// One application of the sine map; only k1 changes.
ChaoticState sine_map_step(const ChaoticState& state);

/// Linear envelope a + gamma(l), gamma(l) = -(l/lmax)*(a-b); runs a down to b.
double g_schedule(const ChaoticState& state, int l, int l_max);

/// Maps k1 from [r1, r2] onto [0, g].
double normalize_chaotic(const ChaoticState& state, double g);

/// Chaotic sigmoid constant: advances the sine map one step, normalizes the
/// new value against g_schedule(l) and adds the sigmoid term.
double final_k(const SigmoidK& sigmoid, ChaoticState& state, int l, int l_max);

/// The K(l) variant in force for a run, with its parameters and map state.
struct CoulombSchedule {
  ScheduleKind kind = ScheduleKind::chaotic_sigmoid;
  ExponentialK exponential{};
  SigmoidK sigmoid{};
  ChaoticState chaos{};

  /// Coulomb constant for iteration l; advances the chaotic state when the
  /// chaotic sigmoid variant is active. A schedule belongs to one run.
  double next(int l, int l_max);
};

}  // namespace aiaefa
