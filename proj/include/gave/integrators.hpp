#pragma once

#include <cstdint>
#include <vector>

#include "gave/dynamics.hpp"
#include "gave/problem.hpp"

namespace gave {

/// Settings for the explicit discrete solver. The exponent parameter xi > 2
/// fixes lambda1 = 1 - 2/xi and lambda2 = 1 + 2/xi, the regime in which the
/// finite step count and the decay envelope are guaranteed.
struct EulerConfig {
  double eta = 0.1;
  double xi = 4.0;
  std::int64_t max_iter = 1000000;
  double tol = 1e-8;  ///< stop once the residual norm drops to this level
  bool safeguard = false;  ///< retry residual-increasing steps at halved length
};

/// Record of a discrete solve; iterates[0] is the initial point and
/// residual_norms[k] is the residual norm at iterates[k].
struct IterateLog {
  std::vector<Vector> iterates;
  std::vector<double> residual_norms;
  std::int64_t steps_taken = 0;
  bool converged = false;
  bool safeguard_enabled = false;
  /// Number of halved retries performed. Nonzero means the run deviated from
  /// the plain explicit update and step-count guarantees no longer apply.
  std::int64_t safeguard_retries = 0;
};

/// Continuous-flow sample path: times strictly increasing from 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
};

/// Explicit update x_{k+1} = x_k - eta * rho(||r(x_k)||) * gamma * A^T r(x_k)
/// until the residual norm reaches config.tol or max_iter steps elapse.
/// With the safeguard off, a residual growing one million-fold past its
/// starting value (or turning non-finite) raises NumericalError; with it on,
/// residual-increasing steps are retried at halved length and counted in the
/// log.
IterateLog forward_euler_solve(const GaveProblem& problem,
                               const FlowParams& params,
                               const EulerConfig& config, const Vector& x0);

/// Steps guaranteed to reach the solution's eps-neighborhood for an
/// admissible step size: ceil(pi*xi / (2*eta*sqrt(c1*c2))). Requires params
/// to match config.xi (lambda_i = 1 -/+ 2/xi) and a certified problem.
std::int64_t fixed_step_count(const EulerConfig& config,
                              const FlowParams& params,
                              const Certificate& cert);

/// Decay envelope of the continuous flow:
/// sqrt(2) * (sqrt(c1/c2) * tan(pi/2 - sqrt(c1*c2)*t/xi))^(xi/2) for
/// t < pi*xi/(2*sqrt(c1*c2)), zero beyond, +infinity at t = 0.
double continuous_envelope(const EulerConfig& config, const FlowParams& params,
                           const Certificate& cert, double t);

/// High-accuracy stand-in for the continuous flow: classical 4th-order
/// Runge-Kutta with base step h. Because the exact flow never increases the
/// residual norm on a certified problem, any trial step that does is retried
/// at halved length (NumericalError once the step underflows 1e-12*h).
/// Integration stops early when the residual norm falls to
/// 1e-12 * max(1, ||c||); the final state is then carried to t_end so the
/// returned trajectory always covers [0, t_end].
Trajectory reference_flow_solve(const GaveProblem& problem,
                                const FlowParams& params, double h,
                                double t_end, const Vector& x0);

/// True iff the discrete iterates track the continuous trajectory:
/// ||x_k - x(eta*k)|| <= eps for every k with eta*k <= horizon, where
/// x(eta*k) linearly interpolates the trajectory samples. A log that stopped
/// early contributes its final iterate for the remaining grid points (the
/// converged solver holds its answer). Throws when the trajectory does not
/// cover [0, horizon].
bool closeness_check(const Trajectory& traj, const IterateLog& log, double eta,
                     double horizon, double eps);

/// Searches eta = eta0 * 2^-j (j = 0..40) for the largest step size whose
/// plain explicit run tracks the decay envelope: ||x_k - x*|| bounded by
/// envelope(eta*k) + eps up to the fixed step count and by eps on a trailing
/// probe window beyond it. The solution x* is obtained internally from a
/// reference-flow solve. NumericalError when no step size qualifies.
double find_step(const GaveProblem& problem, const FlowParams& params,
                 double xi, double eps, double eta0, const Vector& x0);

}  // namespace gave
