#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "gave/problem.hpp"
#include "gave/reformulations.hpp"

namespace gave {

/// SplitMix64 pseudo-random generator. Fixed permanently as the repository's
/// instance RNG so that equal seeds reproduce instances bit-exactly on every
/// platform (the state update and output mix use only uint64 arithmetic).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) using the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal draw via Box-Muller (cosine branch; two uniforms per
  /// call, no cached second value, so the draw sequence stays transparent).
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // in (0, 1]; keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Recipe for a random solvable instance with an embedded known solution.
struct GeneratorSpec {
  Eigen::Index n = 1;
  double gap = 1.0;    ///< requested sigma_min(A) - ||B||, must be > 0
  double scale = 1.0;  ///< entries of the embedded solution lie in [-scale, scale]
  std::uint64_t seed = 0;
  bool identity_b = false;  ///< when set, B = I (the |x|-coefficient is the identity)
};

/// Builds A = Q1 diag(sigma) Q2^T with Haar-random orthogonal factors and
/// singular values in [1+gap, 2+gap]; B is Gaussian rescaled to unit spectral
/// norm (or the identity when spec.identity_b); x_star is uniform in
/// [-scale, scale]^n and c is chosen so x_star solves the equation exactly.
/// The certificate gap is at least spec.gap by construction.
std::pair<GaveProblem, Vector> random_solvable_gave(const GeneratorSpec& spec);

/// Symmetric positive definite M = Q diag(mu) Q^T with eigenvalues in
/// [0.5, 2.0] and q uniform in [-1, 1]^l. Guarantees sigma_min(M+I) >= 1.5
/// and ||M-I|| <= 1, so the complementarity-to-equation transform of every
/// output is certified.
LcpProblem random_spd_lcp(Eigen::Index l, std::uint64_t seed);

}  // namespace gave
