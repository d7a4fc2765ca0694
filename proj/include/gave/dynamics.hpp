#pragma once

#include <Eigen/LU>

#include "gave/problem.hpp"

namespace gave {

/// Parameters of the fixed-time flow dx/dt = -rho(x) * gamma * A^T r(x) with
/// rho(x) = rho1*||r||^(lambda1-1) + rho2*||r||^(lambda2-1).
struct FlowParams {
  double gamma = 1.0;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double lambda1 = 0.5;  ///< must lie in (0, 1)
  double lambda2 = 1.5;  ///< must exceed 1

  FlowParams() = default;
  FlowParams(double gamma, double rho1, double rho2, double lambda1,
             double lambda2);

  /// Exponent pair lambda1 = 1 - 2/xi, lambda2 = 1 + 2/xi (xi > 2); this is
  /// the form under which the finite-step count and decay envelope hold.
  static FlowParams from_xi(double gamma, double rho1, double rho2, double xi);
};

/// Settling-time data: every trajectory reaches the solution by t_max
/// regardless of the initial condition, where
/// t_max = 1/(c1*(1-kappa1)) + 1/(c2*(kappa2-1)).
struct SettlingBound {
  double c1 = 0.0;
  double c2 = 0.0;
  double kappa1 = 0.0;  ///< (lambda1+1)/2, in (0.5, 1)
  double kappa2 = 0.0;  ///< (lambda2+1)/2, > 1
  double t_max = 0.0;
};

/// Scalar speed factor rho1*r_norm^(lambda1-1) + rho2*r_norm^(lambda2-1),
/// or 0 when r_norm <= zero_tol (the flow is defined to stop at residual
/// zero; callers pass a problem-scaled threshold to absorb roundoff).
double rho(const FlowParams& params, double r_norm, double zero_tol = 0.0);

/// Right-hand side -rho(||r||) * gamma * A^T r(x). Returns the zero vector
/// when ||r(x)|| <= 1e-14 * max(1, ||c||).
Vector flow_field(const FlowParams& params, const GaveProblem& problem,
                  const Vector& x);

/// Global Lipschitz constant gamma * (||A^T A|| + ||A^T B||) of the map
/// x -> gamma * A^T r(x).
double lipschitz_constant(const FlowParams& params, const GaveProblem& problem);

/// Settling bound built from the certificate gap:
/// c_i = 2^((lambda_i-1)/2) * gamma * rho_i * gap^(lambda_i+1).
SettlingBound settling_time_bound(const FlowParams& params,
                                  const Certificate& cert);

/// Earlier published bound for the B = I case, kept for tightness
/// comparisons. Requires sigma_min(A) > 1. With s = 1/||A^{-1}||^2 - 1 and
/// d = ||A+I|| + ||A-I||:
///   c1 = 2^((lambda1-1)/2) * gamma * rho1 * s^2     / d^(3-lambda1)
///   c2 = 2^((lambda2-1)/2) * gamma * rho2 * s^(lambda2+1) / d^(lambda2+1)
SettlingBound settling_time_bound_lyyhc(const FlowParams& params,
                                        const Matrix& a);

/// Energy 0.5 * ||x - x_star||^2 that decays along flow trajectories.
double lyapunov(const Vector& x, const Vector& x_star);

/// Classical inverse-based baseline flow dz/dt = 0.5*rho_scale*(|A^{-1}(Bz+c)| - z)
/// with solution read out as x = A^{-1}(Bz+c). The A factorization is done
/// once at construction (never forming the inverse) and reused per evaluation.
class BaselineFlow {
 public:
  /// Throws NumericalError when A is numerically singular.
  BaselineFlow(const GaveProblem& problem, double rho_scale);

  Vector field(const Vector& z) const;
  Vector output(const Vector& z) const;
  double rho_scale() const { return rho_scale_; }

 private:
  Matrix b_;
  Vector c_;
  double rho_scale_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace gave
