#include "gave/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace gave {

namespace {

void check_pivots(const Eigen::PartialPivLU<Matrix>& lu, const char* what) {
  const Matrix& u = lu.matrixLU();
  const Eigen::Index n = u.rows();
  double min_pivot = std::abs(u(0, 0));
  double max_pivot = min_pivot;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double pivot = std::abs(u(i, i));
    min_pivot = std::min(min_pivot, pivot);
    max_pivot = std::max(max_pivot, pivot);
  }
  if (min_pivot <= 1e-12 * std::max(1.0, max_pivot)) {
    throw NumericalError(std::string(what) + " is numerically singular");
  }
}

}  // namespace

FlowParams::FlowParams(double gamma, double rho1, double rho2, double lambda1,
                       double lambda2)
    : gamma(gamma), rho1(rho1), rho2(rho2), lambda1(lambda1), lambda2(lambda2) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive and finite");
  }
  if (!(rho1 > 0.0) || !std::isfinite(rho1)) {
    throw std::invalid_argument("rho1 must be positive and finite");
  }
  if (!(rho2 > 0.0) || !std::isfinite(rho2)) {
    throw std::invalid_argument("rho2 must be positive and finite");
  }
  if (!(lambda1 > 0.0) || !(lambda1 < 1.0)) {
    throw std::invalid_argument("lambda1 must lie in (0, 1)");
  }
  if (!(lambda2 > 1.0) || !std::isfinite(lambda2)) {
    throw std::invalid_argument("lambda2 must exceed 1");
  }
}

FlowParams FlowParams::from_xi(double gamma, double rho1, double rho2,
                               double xi) {
  if (!(xi > 2.0) || !std::isfinite(xi)) {
    throw std::invalid_argument("xi must exceed 2");
  }
  return FlowParams(gamma, rho1, rho2, 1.0 - 2.0 / xi, 1.0 + 2.0 / xi);
}

double rho(const FlowParams& params, double r_norm, double zero_tol) {
  if (!(r_norm >= 0.0) || !std::isfinite(r_norm)) {
    throw std::invalid_argument("residual norm must be nonnegative and finite");
  }
  if (r_norm <= zero_tol) {
    return 0.0;
  }
  return params.rho1 * std::pow(r_norm, params.lambda1 - 1.0) +
         params.rho2 * std::pow(r_norm, params.lambda2 - 1.0);
}

Vector flow_field(const FlowParams& params, const GaveProblem& problem,
                  const Vector& x) {
  if (x.size() != problem.n()) {
    throw std::invalid_argument("state dimension must match the problem");
  }
  const Vector r = residual(problem, x);
  const double r_norm = r.norm();
  const double zero_tol = 1e-14 * std::max(1.0, problem.c().norm());
  const double speed = rho(params, r_norm, zero_tol);
  if (speed == 0.0) {
    return Vector::Zero(problem.n());
  }
  return -speed * params.gamma * (problem.A().transpose() * r);
}

double lipschitz_constant(const FlowParams& params,
                          const GaveProblem& problem) {
  const Matrix at = problem.A().transpose();
  return params.gamma *
         (spectral_norm(at * problem.A()) + spectral_norm(at * problem.B()));
}

namespace {

SettlingBound assemble_bound(double c1, double c2, double lambda1,
                             double lambda2) {
  SettlingBound bound;
  bound.c1 = c1;
  bound.c2 = c2;
  bound.kappa1 = 0.5 * (lambda1 + 1.0);
  bound.kappa2 = 0.5 * (lambda2 + 1.0);
  bound.t_max = 1.0 / (c1 * (1.0 - bound.kappa1)) +
                1.0 / (c2 * (bound.kappa2 - 1.0));
  return bound;
}

}  // namespace

SettlingBound settling_time_bound(const FlowParams& params,
                                  const Certificate& cert) {
  if (!cert.certified) {
    throw std::invalid_argument(
        "settling bound requires a certified problem (gap > 0)");
  }
  const double gap = cert.gap;
  const double c1 = std::pow(2.0, 0.5 * (params.lambda1 - 1.0)) * params.gamma *
                    params.rho1 * std::pow(gap, params.lambda1 + 1.0);
  const double c2 = std::pow(2.0, 0.5 * (params.lambda2 - 1.0)) * params.gamma *
                    params.rho2 * std::pow(gap, params.lambda2 + 1.0);
  return assemble_bound(c1, c2, params.lambda1, params.lambda2);
}

SettlingBound settling_time_bound_lyyhc(const FlowParams& params,
                                        const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("matrix must be square and nonempty");
  }
  const double sigma_min = smallest_singular_value(a);
  if (!(sigma_min > 1.0)) {
    throw std::invalid_argument(
        "comparison bound requires sigma_min(A) > 1 (the B = I regime)");
  }
  const Eigen::Index n = a.rows();
  const Matrix identity = Matrix::Identity(n, n);
  // ||A^{-1}|| = 1/sigma_min(A), so s = sigma_min(A)^2 - 1.
  const double s = sigma_min * sigma_min - 1.0;
  const double d = spectral_norm(a + identity) + spectral_norm(a - identity);
  const double c1 = std::pow(2.0, 0.5 * (params.lambda1 - 1.0)) * params.gamma *
                    params.rho1 * s * s / std::pow(d, 3.0 - params.lambda1);
  const double c2 = std::pow(2.0, 0.5 * (params.lambda2 - 1.0)) * params.gamma *
                    params.rho2 * std::pow(s / d, params.lambda2 + 1.0);
  return assemble_bound(c1, c2, params.lambda1, params.lambda2);
}

double lyapunov(const Vector& x, const Vector& x_star) {
  if (x.size() != x_star.size()) {
    throw std::invalid_argument("vectors must share dimensions");
  }
  return 0.5 * (x - x_star).squaredNorm();
}

BaselineFlow::BaselineFlow(const GaveProblem& problem, double rho_scale)
    : b_(problem.B()), c_(problem.c()), rho_scale_(rho_scale),
      lu_(problem.A()) {
  if (!(rho_scale > 0.0) || !std::isfinite(rho_scale)) {
    throw std::invalid_argument("rho_scale must be positive and finite");
  }
  check_pivots(lu_, "A");
}

Vector BaselineFlow::output(const Vector& z) const {
  if (z.size() != c_.size()) {
    throw std::invalid_argument("state dimension must match the problem");
  }
  return lu_.solve(b_ * z + c_);
}

Vector BaselineFlow::field(const Vector& z) const {
  return 0.5 * rho_scale_ * (output(z).cwiseAbs() - z);
}

}  // namespace gave
