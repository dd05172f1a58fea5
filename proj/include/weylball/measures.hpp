#pragma once

#include "weylball/ball.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace wb {

// All randomized components draw from a 64-bit Mersenne Twister seeded
// with the caller's seed.
using Rng = std::mt19937_64;

struct DiscreteMeasure {
  Eigen::Index q = 1;
  std::vector<double> atoms;
  std::vector<CMatrix> weights;

  void validate(const Tolerance& tol = {}) const;
  // Adds weight at t, merging with an existing atom at the same location.
  void add(double t, const CMatrix& w);
};

MomentSequence moments_of(const DiscreteMeasure& mu, int m);
CMatrix stieltjes(const DiscreteMeasure& mu, cplx z);

struct ProblemFixture {
  MomentSequence s;
  DiscreteMeasure witness;
  bool relaxed = false;
  bool degenerate = false;
  std::uint64_t seed = 0;
  int n = 0;
};

ProblemFixture sample_fixture(std::uint64_t seed, Eigen::Index q, int n, bool degenerate,
                              bool relaxed = false);

// Canonical pair (0, I) or (E, I) with E = P G P + i P H H* P, P onto ran h_{2n}.
ConstantPair sample_pair(std::uint64_t seed, const MomentSequence& s, bool canonical = false,
                         const Tolerance& tol = {});

// Another solution of the "<=" problem obtained from the witness by adding
// signed point masses whose moments vanish up to order 2n-1 and whose
// 2n-th moment stays inside the available slack. Empty when the witness has
// too few definite atoms to absorb such a perturbation.
std::optional<DiscreteMeasure> perturbed_solution(std::uint64_t seed, const ProblemFixture& fx);

// Residual of the "<=" conditions: max deviation of moments 0..2n-1 and the
// most negative eigenvalue of s_{2n} minus the measure's 2n-th moment.
struct SolutionCheck {
  double moment_dev = 0.0;
  double slack_min_eig = 0.0;
};
SolutionCheck check_solution(const DiscreteMeasure& mu, const MomentSequence& s);

CMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c);
CMatrix random_hermitian(Rng& rng, Eigen::Index q);
// Random matrix of given rank as a product of q x r and r x c factors.
CMatrix random_rank(Rng& rng, Eigen::Index r, Eigen::Index c, Eigen::Index rk);
// Uniformly scaled contraction with spectral norm in (0, 1].
CMatrix random_contraction(Rng& rng, Eigen::Index q, bool unit_norm = false);
cplx random_upper_point(Rng& rng);

}  // namespace wb
