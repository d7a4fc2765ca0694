#include "gave/integrators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gave {

namespace {

constexpr double kDivergenceFactor = 1e6;
constexpr std::int64_t kMaxSafeguardRetries = 60;
constexpr std::int64_t kMaxTrajectorySamples = 10000000;
constexpr std::int64_t kStepSearchBudget = 4000000;
constexpr std::int64_t kStepSearchMaxHalvings = 40;
constexpr std::int64_t kStepSearchProbeWindow = 256;

double residual_zero_tol(const GaveProblem& problem) {
  return 1e-14 * std::max(1.0, problem.c().norm());
}

void validate_config(const EulerConfig& config) {
  if (!(config.eta > 0.0) || !std::isfinite(config.eta)) {
    throw std::invalid_argument("eta must be positive and finite");
  }
  if (!(config.xi > 2.0) || !std::isfinite(config.xi)) {
    throw std::invalid_argument("xi must exceed 2");
  }
  if (config.max_iter < 1) {
    throw std::invalid_argument("max_iter must be at least 1");
  }
  if (!(config.tol > 0.0)) {
    throw std::invalid_argument("tol must be positive");
  }
}

void require_xi_consistent(const EulerConfig& config, const FlowParams& params) {
  const double lambda1 = 1.0 - 2.0 / config.xi;
  const double lambda2 = 1.0 + 2.0 / config.xi;
  if (std::abs(params.lambda1 - lambda1) > 1e-12 ||
      std::abs(params.lambda2 - lambda2) > 1e-12) {
    throw std::invalid_argument(
        "exponents must equal 1 -/+ 2/xi for step-count and envelope use");
  }
}

/// sqrt(c1*c2) with the c's from the certificate-based settling bound.
double sqrt_c1c2(const FlowParams& params, const Certificate& cert) {
  const SettlingBound bound = settling_time_bound(params, cert);
  return std::sqrt(bound.c1 * bound.c2);
}

Vector interpolate(const Trajectory& traj, double t) {
  const auto& times = traj.times;
  if (t <= times.front()) {
    return traj.states.front();
  }
  if (t >= times.back()) {
    return traj.states.back();
  }
  std::size_t hi = 1;
  while (times[hi] < t) {
    ++hi;
  }
  const std::size_t lo = hi - 1;
  const double span = times[hi] - times[lo];
  const double w = (t - times[lo]) / span;
  return (1.0 - w) * traj.states[lo] + w * traj.states[hi];
}

}  // namespace

IterateLog forward_euler_solve(const GaveProblem& problem,
                               const FlowParams& params,
                               const EulerConfig& config, const Vector& x0) {
  validate_config(config);
  if (x0.size() != problem.n()) {
    throw std::invalid_argument("initial point must match the problem size");
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument("initial point contains non-finite entries");
  }

  const double zero_tol = residual_zero_tol(problem);
  IterateLog log;
  log.safeguard_enabled = config.safeguard;

  Vector x = x0;
  Vector r = residual(problem, x);
  double r_norm = r.norm();
  const double r0_norm = r_norm;
  log.iterates.push_back(x);
  log.residual_norms.push_back(r_norm);
  if (r_norm <= config.tol) {
    log.converged = true;
    return log;
  }

  for (std::int64_t k = 1; k <= config.max_iter; ++k) {
    const double speed = rho(params, r_norm, zero_tol);
    if (speed == 0.0) {
      break;  // field vanished below the residual floor; no further motion
    }
    const Vector direction = params.gamma * (problem.A().transpose() * r);

    double eff = config.eta;
    Vector x_new = x - eff * speed * direction;
    Vector r_new = residual(problem, x_new);
    double r_new_norm = r_new.norm();

    if (config.safeguard) {
      // Strict decrease required: accepting an equal residual can lock the
      // iterate into a two-cycle mirrored across the solution.
      std::int64_t retries = 0;
      while (!(r_new_norm < r_norm)) {  // also catches non-finite norms
        if (++retries > kMaxSafeguardRetries) {
          throw NumericalError(
              "safeguarded step stalled: residual refuses to decrease");
        }
        eff *= 0.5;
        x_new = x - eff * speed * direction;
        r_new = residual(problem, x_new);
        r_new_norm = r_new.norm();
      }
      log.safeguard_retries += retries;
    } else if (!std::isfinite(r_new_norm) ||
               r_new_norm > kDivergenceFactor * r0_norm) {
      throw NumericalError(
          "divergence detected: residual grew a million-fold; reduce eta or "
          "enable the safeguard");
    }

    x = std::move(x_new);
    r = std::move(r_new);
    r_norm = r_new_norm;
    log.iterates.push_back(x);
    log.residual_norms.push_back(r_norm);
    log.steps_taken = k;
    if (r_norm <= config.tol) {
      log.converged = true;
      break;
    }
  }
  return log;
}

std::int64_t fixed_step_count(const EulerConfig& config,
                              const FlowParams& params,
                              const Certificate& cert) {
  validate_config(config);
  require_xi_consistent(config, params);
  if (!cert.certified) {
    throw std::invalid_argument("step count requires a certified problem");
  }
  double v = std::numbers::pi * config.xi /
             (2.0 * config.eta * sqrt_c1c2(params, cert));
  // Snap values a few ulps away from an integer before taking the ceiling,
  // so analytically integer counts do not round up spuriously.
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= 32.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(1.0, std::abs(v))) {
    v = nearest;
  }
  const double ceiled = std::ceil(v);
  if (!(ceiled < 9e18)) {
    throw NumericalError("step count overflows a 64-bit integer");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(ceiled));
}

double continuous_envelope(const EulerConfig& config, const FlowParams& params,
                           const Certificate& cert, double t) {
  validate_config(config);
  require_xi_consistent(config, params);
  if (!cert.certified) {
    throw std::invalid_argument("envelope requires a certified problem");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("time must be nonnegative and finite");
  }
  if (t == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const SettlingBound bound = settling_time_bound(params, cert);
  const double root = std::sqrt(bound.c1 * bound.c2);
  const double t_hat = std::numbers::pi * config.xi / (2.0 * root);
  if (t >= t_hat) {
    return 0.0;
  }
  const double angle = std::numbers::pi / 2.0 - root * t / config.xi;
  const double base = std::sqrt(bound.c1 / bound.c2) * std::tan(angle);
  return std::sqrt(2.0) * std::pow(base, config.xi / 2.0);
}

Trajectory reference_flow_solve(const GaveProblem& problem,
                                const FlowParams& params, double h,
                                double t_end, const Vector& x0) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("base step must be positive and finite");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("end time must be positive and finite");
  }
  if (x0.size() != problem.n()) {
    throw std::invalid_argument("initial point must match the problem size");
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument("initial point contains non-finite entries");
  }

  const double c_scale = std::max(1.0, problem.c().norm());
  const double stop_tol = 1e-12 * c_scale;
  const double settled_tol = 1e-8 * c_scale;
  const auto rk4 = [&](const Vector& x, double dt) {
    const Vector k1 = flow_field(params, problem, x);
    const Vector k2 = flow_field(params, problem, x + 0.5 * dt * k1);
    const Vector k3 = flow_field(params, problem, x + 0.5 * dt * k2);
    const Vector k4 = flow_field(params, problem, x + dt * k3);
    return Vector(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  Trajectory traj;
  Vector x = x0;
  double r_norm = residual(problem, x).norm();
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(x);

  double step = h;
  std::int64_t stalled_steps = 0;
  while (t < t_end && r_norm > stop_tol) {
    double dt = std::min(step, t_end - t);
    Vector x_new = rk4(x, dt);
    double r_new_norm = residual(problem, x_new).norm();

    if (!(r_new_norm <= r_norm * (1.0 + 1e-12))) {
      step = 0.5 * dt;
      if (step < 1e-12 * h) {
        throw NumericalError(
            "reference integration step underflow: flow too stiff at the "
            "current state");
      }
      continue;
    }

    // Accepting the first non-increasing step can land on the equal-residual
    // mirror point across the equilibrium and freeze all progress there, so
    // keep halving while that strictly improves the landing residual. Smooth
    // stretches exit after one extra trial (a shorter step decays less).
    for (int refine = 0; refine < 40; ++refine) {
      const double dt_half = 0.5 * dt;
      const Vector x_half = rk4(x, dt_half);
      const double r_half_norm = residual(problem, x_half).norm();
      if (!(r_half_norm < r_new_norm)) {
        break;
      }
      dt = dt_half;
      x_new = x_half;
      r_new_norm = r_half_norm;
    }

    if (r_new_norm > r_norm * (1.0 - 1e-6)) {
      ++stalled_steps;
    } else {
      stalled_steps = 0;
    }

    t = (t_end - t <= dt) ? t_end : t + dt;
    x = std::move(x_new);
    r_norm = r_new_norm;
    traj.times.push_back(t);
    traj.states.push_back(x);
    step = std::min(2.0 * dt, h);
    if (stalled_steps >= 30 && r_norm <= settled_tol) {
      break;  // residual sits at the integrator's floor; the flow has settled
    }
    if (static_cast<std::int64_t>(traj.times.size()) > kMaxTrajectorySamples) {
      throw NumericalError("reference integration exceeded its sample budget");
    }
  }

  if (t < t_end) {  // settled early; the state no longer moves measurably
    traj.times.push_back(t_end);
    traj.states.push_back(x);
  }
  return traj;
}

bool closeness_check(const Trajectory& traj, const IterateLog& log, double eta,
                     double horizon, double eps) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be positive and finite");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be nonnegative and finite");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("eps must be positive");
  }
  if (traj.times.empty() || traj.times.size() != traj.states.size()) {
    throw std::invalid_argument("trajectory is empty or inconsistent");
  }
  if (log.iterates.empty()) {
    throw std::invalid_argument("iterate log is empty");
  }
  if (traj.states.front().size() != log.iterates.front().size()) {
    throw std::invalid_argument(
        "trajectory and iterate log dimensions differ");
  }
  if (traj.times.back() < horizon * (1.0 - 1e-12)) {
    throw std::invalid_argument("trajectory does not cover the horizon");
  }

  const auto k_max =
      static_cast<std::int64_t>(std::floor(horizon / eta + 1e-9));
  const auto last = static_cast<std::int64_t>(log.iterates.size()) - 1;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double t = std::min(eta * static_cast<double>(k), traj.times.back());
    const Vector reference = interpolate(traj, t);
    const Vector& iterate = log.iterates[static_cast<std::size_t>(
        std::min(k, last))];
    if ((iterate - reference).norm() > eps) {
      return false;
    }
  }
  return true;
}

double find_step(const GaveProblem& problem, const FlowParams& params,
                 double xi, double eps, double eta0, const Vector& x0) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be positive and finite");
  }
  if (!(eta0 > 0.0) || !std::isfinite(eta0)) {
    throw std::invalid_argument("eta0 must be positive and finite");
  }
  if (x0.size() != problem.n()) {
    throw std::invalid_argument("initial point must match the problem size");
  }
  const Certificate cert = certify_unique(problem);
  if (!cert.certified) {
    throw std::invalid_argument("step search requires a certified problem");
  }

  // Proxy for the exact solution: run the flow out to its settling bound.
  const SettlingBound bound = settling_time_bound(params, cert);
  const Trajectory traj = reference_flow_solve(
      problem, params, bound.t_max / 1000.0, bound.t_max, x0);
  const Vector x_ref = traj.states.back();

  const double zero_tol = residual_zero_tol(problem);
  const Matrix at = problem.A().transpose();

  for (std::int64_t j = 0; j <= kStepSearchMaxHalvings; ++j) {
    const double eta = eta0 * std::pow(2.0, -static_cast<double>(j));
    EulerConfig trial;
    trial.eta = eta;
    trial.xi = xi;
    trial.max_iter = 1;  // unused by the streaming run below
    trial.tol = 1e-300;
    const std::int64_t k_star = fixed_step_count(trial, params, cert);
    const std::int64_t total = k_star + kStepSearchProbeWindow;
    if (total > kStepSearchBudget) {
      throw NumericalError(
          "step-size search exceeded its iteration budget before finding an "
          "admissible eta");
    }

    Vector x = x0;
    Vector r = residual(problem, x);
    double r_norm = r.norm();
    const double r0_norm = r_norm;
    bool ok = true;
    for (std::int64_t k = 1; k <= total && ok; ++k) {
      const double speed = rho(params, r_norm, zero_tol);
      if (speed == 0.0) {
        // Stationary from here on; the remaining checks collapse to one.
        ok = (x - x_ref).norm() <= eps;
        break;
      }
      x -= eta * speed * (params.gamma * (at * r));
      r = residual(problem, x);
      r_norm = r.norm();
      if (!std::isfinite(r_norm) || r_norm > kDivergenceFactor * r0_norm) {
        ok = false;
        break;
      }
      const double err = (x - x_ref).norm();
      if (k <= k_star) {
        const double envelope = continuous_envelope(
            trial, params, cert, eta * static_cast<double>(k));
        ok = err <= envelope + eps;
      } else {
        ok = err <= eps;
      }
    }
    if (ok) {
      return eta;
    }
  }
  throw NumericalError(
      "no admissible step size found within 40 halvings of eta0");
}

}  // namespace gave
