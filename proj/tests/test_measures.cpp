#include "support.hpp"

using namespace wb;
using namespace wb::testing;

namespace {

DiscreteMeasure two_point() {
  DiscreteMeasure mu;
  mu.add(-1.0, scalar(0.5));
  mu.add(1.0, scalar(0.5));
  return mu;
}

}  // namespace

TEST(Moments, Examples) {
  auto s = moments_of(two_point(), 2);
  EXPECT_MAT_NEAR(s[0], scalar(1), 1e-15);
  EXPECT_MAT_NEAR(s[1], scalar(0), 1e-15);
  EXPECT_MAT_NEAR(s[2], scalar(1), 1e-15);
  DiscreteMeasure empty;
  s = moments_of(empty, 3);
  for (int j = 0; j <= 3; ++j) EXPECT_MAT_NEAR(s[j], scalar(0), 0.0);
  DiscreteMeasure origin;
  origin.q = 2;
  origin.add(0.0, identity(2));
  s = moments_of(origin, 2);
  EXPECT_MAT_NEAR(s[0], identity(2), 0.0);
  EXPECT_MAT_NEAR(s[1], zeros(2, 2), 0.0);
  EXPECT_MAT_NEAR(s[2], zeros(2, 2), 0.0);
}

TEST(Stieltjes, Examples) {
  EXPECT_MAT_NEAR(stieltjes(two_point(), I_UNIT), scalar(0.5 * I_UNIT), 1e-15);
  DiscreteMeasure d;
  d.add(0.0, scalar(1));
  EXPECT_MAT_NEAR(stieltjes(d, I_UNIT), scalar(I_UNIT), 1e-15);
  EXPECT_MAT_NEAR(stieltjes(DiscreteMeasure{}, cplx(0.3, 2)), scalar(0), 0.0);
  EXPECT_THROW(stieltjes(d, 0.0), DomainError);
}

TEST(Measure, MergesAndValidates) {
  DiscreteMeasure mu;
  mu.add(0.5, scalar(1));
  mu.add(0.5, scalar(2));
  ASSERT_EQ(mu.atoms.size(), 1u);
  EXPECT_MAT_NEAR(mu.weights[0], scalar(3), 0.0);
  mu.weights[0] = scalar(-1);
  EXPECT_THROW(mu.validate(), InvalidArgument);
}

TEST(Fixture, AlwaysExtendableAndWitnessed) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Eigen::Index q = 1 + seed % 3;
    const int n = static_cast<int>(seed % 5);
    const bool degenerate = seed % 2 == 1;
    const auto fx = sample_fixture(seed, q, n, degenerate, seed % 3 == 0);
    EXPECT_EQ(fx.s.kappa(), 2 * n);
    EXPECT_TRUE(classify_sequence(fx.s).nnd_extendable) << "seed " << seed;
    const auto chk = check_solution(fx.witness, fx.s);
    const double scale = 1 + op_norm(fx.s[2 * n]);
    EXPECT_LE(chk.moment_dev, 1e-12 * scale);
    EXPECT_GE(chk.slack_min_eig, -1e-12 * scale);
    if (!degenerate) EXPECT_TRUE(classify_sequence(fx.s).hankel_pd) << "seed " << seed;
  }
}

TEST(Fixture, DegenerateRankDeficient) {
  const auto fx = sample_fixture(2, 2, 1, true);
  const auto h = hankel_parameters(fx.s);
  EXPECT_LT(rank(h[2], {}, h.ref[2]), 2);
}

TEST(Fixture, Reproducible) {
  const auto a = sample_fixture(9, 2, 2, false, true);
  const auto b = sample_fixture(9, 2, 2, false, true);
  for (int j = 0; j <= 4; ++j) EXPECT_MAT_NEAR(a.s[j], b.s[j], 0.0);
}

TEST(Pair, CanonicalAndStructured) {
  const auto c = sample_pair(0, symmetric_pair(), true);
  EXPECT_MAT_NEAR(c.phi, scalar(0), 0.0);
  EXPECT_MAT_NEAR(c.psi, scalar(1), 0.0);
  const auto p = sample_pair(4, rank_one_data());
  EXPECT_LE(std::abs(p.phi(1, 0)) + std::abs(p.phi(0, 1)) + std::abs(p.phi(1, 1)), 1e-14);
  const auto e = p.phi;
  EXPECT_TRUE(classify_hermitian(imag_part(e)).psd);
  const auto again = sample_pair(4, rank_one_data());
  EXPECT_MAT_NEAR(again.phi, p.phi, 0.0);
}

TEST(Perturbation, SolvesRelaxedProblem) {
  int built = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto fx = sample_fixture(seed, 1 + seed % 3, 1 + static_cast<int>(seed % 4), false, seed % 2 == 0);
    for (std::uint64_t k = 0; k < 4; ++k) {
      const auto mu = perturbed_solution(seed * 100 + k, fx);
      if (!mu) continue;
      ++built;
      EXPECT_NO_THROW(mu->validate());
      const auto chk = check_solution(*mu, fx.s);
      const double scale = 1 + op_norm(fx.s[fx.s.kappa()]);
      EXPECT_LE(chk.moment_dev, 1e-9 * scale) << "seed " << seed;
      EXPECT_GE(chk.slack_min_eig, -1e-9 * scale) << "seed " << seed;
    }
  }
  EXPECT_GT(built, 60);
}

TEST(RandomHelpers, Contraction) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    EXPECT_LE(contraction_defect(random_contraction(rng, 3)), 1.0 + 1e-14);
    EXPECT_NEAR(contraction_defect(random_contraction(rng, 2, true)), 1.0, 1e-12);
    EXPECT_GT(random_upper_point(rng).imag(), 0.0);
  }
}
