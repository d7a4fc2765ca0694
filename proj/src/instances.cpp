#include "gave/instances.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace gave {

namespace {

Matrix gaussian_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = rng.gaussian();
    }
  }
  return m;
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with column
/// signs fixed so the R factor has a nonnegative diagonal (otherwise the
/// distribution would depend on the QR implementation's sign convention).
Matrix random_orthogonal(SplitMix64& rng, Eigen::Index n) {
  const Matrix g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

void validate(const GeneratorSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("generator dimension must be at least 1");
  }
  if (!(spec.gap > 0.0) || !std::isfinite(spec.gap)) {
    throw std::invalid_argument("generator gap must be positive and finite");
  }
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    throw std::invalid_argument("generator scale must be positive and finite");
  }
}

}  // namespace

std::pair<GaveProblem, Vector> random_solvable_gave(const GeneratorSpec& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  const Eigen::Index n = spec.n;

  const Matrix q1 = random_orthogonal(rng, n);
  const Matrix q2 = random_orthogonal(rng, n);
  Vector sigma(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sigma[i] = rng.uniform(1.0 + spec.gap, 2.0 + spec.gap);
  }
  const Matrix a = q1 * sigma.asDiagonal() * q2.transpose();

  Matrix b;
  if (spec.identity_b) {
    b = Matrix::Identity(n, n);
  } else {
    b = gaussian_matrix(rng, n, n);
    const double norm = spectral_norm(b);
    if (!(norm > 0.0)) {
      throw NumericalError("drawn |x|-coefficient matrix has zero norm");
    }
    b /= norm;
  }

  Vector x_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x_star[i] = rng.uniform(-spec.scale, spec.scale);
  }
  Vector c = a * x_star - b * x_star.cwiseAbs();
  return {GaveProblem(a, b, std::move(c)), std::move(x_star)};
}

LcpProblem random_spd_lcp(Eigen::Index l, std::uint64_t seed) {
  if (l < 1) {
    throw std::invalid_argument("LCP dimension must be at least 1");
  }
  SplitMix64 rng(seed);
  const Matrix q = random_orthogonal(rng, l);
  Vector mu(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    mu[i] = rng.uniform(0.5, 2.0);
  }
  Matrix m = q * mu.asDiagonal() * q.transpose();
  m = 0.5 * (m + m.transpose().eval());  // exact symmetry for downstream checks
  Vector qvec(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    qvec[i] = rng.uniform(-1.0, 1.0);
  }
  return LcpProblem(std::move(m), std::move(qvec));
}

}  // namespace gave
