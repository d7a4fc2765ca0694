#pragma once

#include <utility>

#include "gave/problem.hpp"

namespace gave {

/// Linear complementarity problem: find z >= 0 with w = M z + q >= 0 and
/// w^T z = 0.
class LcpProblem {
 public:
  LcpProblem(Matrix M, Vector q);

  const Matrix& M() const { return M_; }
  const Vector& q() const { return q_; }
  Eigen::Index l() const { return q_.size(); }

 private:
  Matrix M_;
  Vector q_;
};

/// Horizontal LCP: find z, w >= 0 complementary with C z - D w = p.
class HlcpProblem {
 public:
  HlcpProblem(Matrix C, Matrix D, Vector p);

  const Matrix& C() const { return C_; }
  const Matrix& D() const { return D_; }
  const Vector& p() const { return p_; }
  Eigen::Index l() const { return p_.size(); }

 private:
  Matrix C_;
  Matrix D_;
  Vector p_;
};

/// Feasibility and complementarity of a candidate LCP solution.
struct ComplementarityReport {
  double min_z = 0.0;
  double min_w = 0.0;
  double inner_product = 0.0;
  bool feasible = false;
  bool complementary = false;
};

/// (M+I) x - (M-I) |x| = q; solving this equation solves the LCP.
GaveProblem lcp_to_gave(const LcpProblem& lcp);

/// Recovers the LCP solution z from a solution x of the transformed
/// equation by solving (M - I) z = 2x - q. Fails when 1 is an eigenvalue
/// of M (M - I numerically singular).
Vector recover_lcp_solution(const LcpProblem& lcp, const Vector& x);

/// Componentwise positive/negative parts: z - w = x and z^T w = 0 exactly.
std::pair<Vector, Vector> gave_solution_to_hlcp(const Vector& x);

/// A = (C+D)/2, B = (D-C)/2, c = p; x = z - w solves the resulting equation.
GaveProblem hlcp_to_gave(const HlcpProblem& hlcp);

/// Computes w = M z + q and reports feasibility (min entries >= -tol) and
/// complementarity (|z^T w| <= tol * max(1, ||z||*||w||)).
ComplementarityReport verify_lcp(const LcpProblem& lcp, const Vector& z,
                                 double tol);

}  // namespace gave
