#include "aiaefa/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aiaefa {

namespace {

void check_iteration(int l, int l_max) {
  if (l_max < 1) {
    throw std::invalid_argument("schedule: l_max must be >= 1");
  }
  if (l < 0 || l > l_max) {
    throw std::invalid_argument("schedule: iteration index out of [0, l_max]");
  }
}

}  // namespace

double exponential_k(const ExponentialK& sched, int l, int l_max) {
  if (!(sched.k0 > 0.0) || !(sched.alpha > 0.0)) {
    throw std::invalid_argument("exponential_k: k0 and alpha must be positive");
  }
  check_iteration(l, l_max);
  return sched.k0 * std::exp(-sched.alpha * static_cast<double>(l) / l_max);
}

double sigmoid_k(const SigmoidK& sched, int l, int l_max) {
  if (!(sched.k0 > 0.0) || !(sched.beta > 0.0) || !(sched.delta > 0.0)) {
    throw std::invalid_argument("sigmoid_k: k0, beta and delta must be positive");
  }
  check_iteration(l, l_max);
  const double shift = static_cast<double>(l) - 0.5 * l_max;
  return sched.k0 / (1.0 + std::exp(sched.beta * shift / sched.delta));
}

ChaoticState sine_map_step(const ChaoticState& state) {
  if (!std::isfinite(state.k1)) {
    throw std::invalid_argument("sine_map_step: k1 must be finite");
  }
  ChaoticState next = state;
  next.k1 = (state.r / 4.0) * std::sin(std::numbers::pi * state.k1);
  return next;
}

double g_schedule(const ChaoticState& state, int l, int l_max) {
  if (!(state.a > state.b) || !(state.b > 0.0)) {
    throw std::invalid_argument("g_schedule: requires a > b > 0");
  }
  check_iteration(l, l_max);
  const double gamma = -(static_cast<double>(l) / l_max) * (state.a - state.b);
  return state.a + gamma;
}

double normalize_chaotic(const ChaoticState& state, double g) {
  if (state.r1 == state.r2) {
    throw std::invalid_argument("normalize_chaotic: r1 and r2 must differ");
  }
  if (g < 0.0) {
    throw std::invalid_argument("normalize_chaotic: g must be non-negative");
  }
  return (state.k1 - state.r1) * g / (state.r2 - state.r1);
}

double final_k(const SigmoidK& sigmoid, ChaoticState& state, int l, int l_max) {
  state = sine_map_step(state);
  const double g = g_schedule(state, l, l_max);
  return normalize_chaotic(state, g) + sigmoid_k(sigmoid, l, l_max);
}

double CoulombSchedule::next(int l, int l_max) {
  if (kind == ScheduleKind::exponential) {
    return exponential_k(exponential, l, l_max);
  }
  return final_k(sigmoid, chaos, l, l_max);
}

}  // namespace aiaefa
