#ifndef SBPCPR_TIME_INTEGRATION_HPP
#define SBPCPR_TIME_INTEGRATION_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sbpcpr/operators.hpp"

namespace sbpcpr {

/// Fixed-step time integration setup. No error control; the step count is
/// prescribed up front.
///
/// The default blow-up threshold sits three orders of magnitude above the
/// physical scale of the experiments (|u| <= ~1.1) and far below overflow;
/// it is tight enough that the slowest divergent configuration is flagged
/// within its time horizon.
struct IntegrationConfig {
  double t_final = 1.0;
  long steps = 1;
  long sample_every = 10;
  double blowup_threshold = 1e3;

  double dt() const {
    if (steps < 1 || !(t_final > 0.0))
      throw std::invalid_argument("IntegrationConfig: need t_final > 0 and steps >= 1");
    return t_final / static_cast<double>(steps);
  }
};

struct DiagnosticsSample {
  double t = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

/// Time series of (t, momentum, energy), truncated at the blow-up time when
/// the run diverged.
struct DiagnosticsSeries {
  std::vector<DiagnosticsSample> samples;
  std::optional<double> blowup_time;
};

/// One step of the classical fourth-order Runge-Kutta method,
/// u + dt/6 (k1 + 2 k2 + 2 k3 + k4). Works for any state type with vector
/// arithmetic (double, Eigen vectors/matrices).
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, const State& u, double dt) {
  const State k1 = rhs(u);
  const State k2 = rhs(State(u + (0.5 * dt) * k1));
  const State k3 = rhs(State(u + (0.5 * dt) * k2));
  const State k4 = rhs(State(u + dt * k3));
  return State(u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

struct IntegrationResult {
  Matrix state;               // final (or last finite) coefficients
  DiagnosticsSeries diagnostics;
  bool blew_up = false;
  double t_end = 0.0;         // time actually reached
};

namespace detail {

inline bool state_ok(const Matrix& u, double threshold) {
  return u.allFinite() && u.cwiseAbs().maxCoeff() <= threshold;
}

}  // namespace detail

/// Advances u0 with rk4_step over config.steps fixed steps, sampling the
/// diagnostics functor (which returns {momentum, energy}) every
/// config.sample_every steps. Halts early and records the blow-up time as
/// soon as any coefficient is non-finite or exceeds the threshold; a blow-up
/// is a reported outcome, not an error.
template <class Rhs, class Diag>
IntegrationResult integrate(Rhs&& rhs, const Matrix& u0, const IntegrationConfig& config,
                            Diag&& diagnostics) {
  const double dt = config.dt();
  IntegrationResult result;
  result.state = u0;

  auto sample = [&](double t, const Matrix& u) {
    const auto [momentum, energy] = diagnostics(u);
    result.diagnostics.samples.push_back({t, momentum, energy});
  };

  if (!detail::state_ok(u0, config.blowup_threshold)) {
    result.blew_up = true;
    result.diagnostics.blowup_time = 0.0;
    return result;
  }
  sample(0.0, u0);

  Matrix u = u0;
  for (long step = 0; step < config.steps; ++step) {
    u = rk4_step(rhs, u, dt);
    const double t = dt * static_cast<double>(step + 1);
    if (!detail::state_ok(u, config.blowup_threshold)) {
      result.blew_up = true;
      result.diagnostics.blowup_time = t;
      result.t_end = t;
      return result;
    }
    result.state = u;
    result.t_end = t;
    if ((step + 1) % config.sample_every == 0 || step + 1 == config.steps) {
      if (result.diagnostics.samples.back().t < t) sample(t, u);
    }
  }
  return result;
}

}  // namespace sbpcpr

#endif  // SBPCPR_TIME_INTEGRATION_HPP
