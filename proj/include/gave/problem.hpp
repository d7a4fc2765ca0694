#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gave {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a computation fails numerically (singular factorization,
/// divergent iteration, step-size underflow). Distinct from
/// std::invalid_argument, which signals a malformed input or a violated
/// precondition.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A generalized absolute value equation A x - B |x| = c with square
/// coefficient matrices. Immutable after construction; construction
/// validates dimensions and finiteness.
class GaveProblem {
 public:
  GaveProblem(Matrix A, Matrix B, Vector c);

  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  const Vector& c() const { return c_; }
  Eigen::Index n() const { return c_.size(); }

 private:
  Matrix A_;
  Matrix B_;
  Vector c_;
};

/// Solvability certificate: the equation has a unique solution for every
/// right-hand side whenever sigma_min(A) > ||B||.
struct Certificate {
  double sigma_min_A = 0.0;
  double norm_B = 0.0;
  double gap = 0.0;  // sigma_min_A - norm_B
  bool certified = false;
};

/// Two-sided bound on the distance to the unique solution, derived from
/// the residual norm: lower = ||r||/(||A||+||B||), upper = ||r||/gap.
struct ErrorBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// r(x) = A x - B |x| - c.
Vector residual(const GaveProblem& problem, const Vector& x);

/// Smallest singular value, via the eigenvalues of the Gram matrix M^T M.
double smallest_singular_value(const Matrix& M);

/// Largest singular value (spectral norm), same route.
double spectral_norm(const Matrix& M);

/// Default certification tolerance: 1e-10 * max(1, ||A||).
double default_certify_tol(const GaveProblem& problem);

/// Checks sigma_min(A) - ||B|| > tol and reports all three quantities.
/// An uncertified result is a valid outcome, not an error.
Certificate certify_unique(const GaveProblem& problem, double tol);
Certificate certify_unique(const GaveProblem& problem);

/// Residual-based bracket on ||x - x_star||. Requires a certified
/// certificate (the upper bound divides by the gap).
ErrorBracket error_bounds(const GaveProblem& problem, const Certificate& cert,
                          const Vector& x);

/// True iff ||r(x)|| <= tol * max(1, ||c||).
bool verify_solution(const GaveProblem& problem, const Vector& x, double tol);

}  // namespace gave
