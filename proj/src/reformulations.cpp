#include "gave/reformulations.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace gave {

namespace {

void check_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(name) +
                                " contains non-finite entries");
  }
}

void check_finite(const Vector& v, const char* name) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(name) +
                                " contains non-finite entries");
  }
}

}  // namespace

LcpProblem::LcpProblem(Matrix M, Vector q) : M_(std::move(M)), q_(std::move(q)) {
  if (M_.rows() == 0) {
    throw std::invalid_argument("LCP dimension must be at least 1");
  }
  if (M_.rows() != M_.cols()) {
    throw std::invalid_argument("LCP matrix M must be square");
  }
  if (q_.size() != M_.rows()) {
    throw std::invalid_argument("LCP vector q must match the dimension of M");
  }
  check_finite(M_, "M");
  check_finite(q_, "q");
}

HlcpProblem::HlcpProblem(Matrix C, Matrix D, Vector p)
    : C_(std::move(C)), D_(std::move(D)), p_(std::move(p)) {
  if (C_.rows() == 0) {
    throw std::invalid_argument("HLCP dimension must be at least 1");
  }
  if (C_.rows() != C_.cols() || D_.rows() != D_.cols()) {
    throw std::invalid_argument("HLCP matrices C and D must be square");
  }
  if (D_.rows() != C_.rows()) {
    throw std::invalid_argument("HLCP matrices C and D must share dimensions");
  }
  if (p_.size() != C_.rows()) {
    throw std::invalid_argument(
        "HLCP vector p must match the dimension of C and D");
  }
  check_finite(C_, "C");
  check_finite(D_, "D");
  check_finite(p_, "p");
}

GaveProblem lcp_to_gave(const LcpProblem& lcp) {
  const Eigen::Index l = lcp.l();
  const Matrix identity = Matrix::Identity(l, l);
  return GaveProblem(lcp.M() + identity, lcp.M() - identity, lcp.q());
}

Vector recover_lcp_solution(const LcpProblem& lcp, const Vector& x) {
  if (x.size() != lcp.l()) {
    throw std::invalid_argument(
        "solution vector must match the LCP dimension");
  }
  check_finite(x, "x");
  const Eigen::Index l = lcp.l();
  const Matrix shifted = lcp.M() - Matrix::Identity(l, l);
  Eigen::PartialPivLU<Matrix> lu(shifted);
  const Matrix& u = lu.matrixLU();
  double min_pivot = std::abs(u(0, 0));
  double max_pivot = min_pivot;
  for (Eigen::Index i = 1; i < l; ++i) {
    const double pivot = std::abs(u(i, i));
    min_pivot = std::min(min_pivot, pivot);
    max_pivot = std::max(max_pivot, pivot);
  }
  if (min_pivot <= 1e-12 * std::max(1.0, max_pivot)) {
    throw NumericalError(
        "cannot recover complementarity solution: M - I is numerically "
        "singular");
  }
  return lu.solve(2.0 * x - lcp.q());
}

std::pair<Vector, Vector> gave_solution_to_hlcp(const Vector& x) {
  check_finite(x, "x");
  Vector z = x.cwiseMax(0.0);
  Vector w = (-x).cwiseMax(0.0);
  return {std::move(z), std::move(w)};
}

GaveProblem hlcp_to_gave(const HlcpProblem& hlcp) {
  const Matrix a = 0.5 * (hlcp.C() + hlcp.D());
  const Matrix b = 0.5 * (hlcp.D() - hlcp.C());
  return GaveProblem(a, b, hlcp.p());
}

ComplementarityReport verify_lcp(const LcpProblem& lcp, const Vector& z,
                                 double tol) {
  if (z.size() != lcp.l()) {
    throw std::invalid_argument(
        "candidate solution must match the LCP dimension");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  check_finite(z, "z");
  const Vector w = lcp.M() * z + lcp.q();
  ComplementarityReport report;
  report.min_z = z.minCoeff();
  report.min_w = w.minCoeff();
  report.inner_product = z.dot(w);
  report.feasible = report.min_z >= -tol && report.min_w >= -tol;
  const double scale = std::max(1.0, z.norm() * w.norm());
  report.complementary = std::abs(report.inner_product) <= tol * scale;
  return report;
}

}  // namespace gave
