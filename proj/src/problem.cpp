#include "gave/problem.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace gave {

namespace {

void require_finite(const Matrix& M, const char* name) {
  if (!M.allFinite()) {
    throw std::invalid_argument(std::string(name) + " has non-finite entries");
  }
}

}  // namespace

GaveProblem::GaveProblem(Matrix A, Matrix B, Vector c)
    : A_(std::move(A)), B_(std::move(B)), c_(std::move(c)) {
  if (A_.rows() != A_.cols()) {
    throw std::invalid_argument("A must be square");
  }
  if (B_.rows() != B_.cols()) {
    throw std::invalid_argument("B must be square");
  }
  if (A_.rows() != B_.rows()) {
    throw std::invalid_argument("A and B must share the same dimension");
  }
  if (c_.size() != A_.rows()) {
    throw std::invalid_argument("c must have the same dimension as A");
  }
  if (A_.rows() < 1) {
    throw std::invalid_argument("dimension must be at least 1");
  }
  require_finite(A_, "A");
  require_finite(B_, "B");
  if (!c_.allFinite()) {
    throw std::invalid_argument("c has non-finite entries");
  }
}

Vector residual(const GaveProblem& problem, const Vector& x) {
  if (x.size() != problem.n()) {
    throw std::invalid_argument("x has wrong dimension");
  }
  return problem.A() * x - problem.B() * x.cwiseAbs() - problem.c();
}

namespace {

// Eigenvalues of M^T M give the squared singular values. A symmetric
// eigensolve on the Gram matrix is accurate enough at desk scale and
// keeps the factorization surface small.
std::pair<double, double> singular_value_range(const Matrix& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
  if (!M.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
  const Matrix gram = M.transpose() * M;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigen-decomposition of Gram matrix failed");
  }
  const auto& ev = es.eigenvalues();
  const double lo = std::sqrt(std::max(0.0, ev.minCoeff()));
  const double hi = std::sqrt(std::max(0.0, ev.maxCoeff()));
  return {lo, hi};
}

}  // namespace

double smallest_singular_value(const Matrix& M) {
  return singular_value_range(M).first;
}

double spectral_norm(const Matrix& M) {
  return singular_value_range(M).second;
}

double default_certify_tol(const GaveProblem& problem) {
  return 1e-10 * std::max(1.0, spectral_norm(problem.A()));
}

Certificate certify_unique(const GaveProblem& problem, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tol must be positive");
  }
  Certificate cert;
  cert.sigma_min_A = smallest_singular_value(problem.A());
  cert.norm_B = spectral_norm(problem.B());
  cert.gap = cert.sigma_min_A - cert.norm_B;
  cert.certified = cert.gap > tol;
  return cert;
}

Certificate certify_unique(const GaveProblem& problem) {
  return certify_unique(problem, default_certify_tol(problem));
}

ErrorBracket error_bounds(const GaveProblem& problem, const Certificate& cert,
                          const Vector& x) {
  if (!cert.certified) {
    throw std::invalid_argument("error_bounds requires a certified problem");
  }
  const double r_norm = residual(problem, x).norm();
  const double norm_A = spectral_norm(problem.A());
  const double norm_B = spectral_norm(problem.B());
  ErrorBracket bracket;
  bracket.lower = r_norm / (norm_A + norm_B);
  bracket.upper = r_norm / cert.gap;
  return bracket;
}

bool verify_solution(const GaveProblem& problem, const Vector& x, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tol must be positive");
  }
  const double r_norm = residual(problem, x).norm();
  return r_norm <= tol * std::max(1.0, problem.c().norm());
}

}  // namespace gave
