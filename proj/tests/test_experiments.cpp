#include "support.hpp"

using namespace lpiso;
using lpiso::test::chi;
using lpiso::test::unit_height;
using lpiso::test::vec;

namespace {

const XSpec kScalar(1, 2.0);
const XSpec kSup(1, kInf);

StepFn half_low(double p) { return chi(0.0, 0.5, unit_height(0.5, p)); }
StepFn half_high(double p) { return chi(0.5, 1.0, unit_height(0.5, p)); }

LampertiIsometry linf(RearrangeMap phi, SigmaField sigma) { return LampertiIsometry(std::move(phi), kInf, std::move(sigma), kSup); }

}  // namespace

TEST(LampertiFunctional, Examples) {
  EXPECT_EQ(lamperti_functional(chi(0, 0.5), chi(0.5, 1), 1.0), 0.0);
  EXPECT_DOUBLE_EQ(lamperti_functional(chi(0, 1), chi(0, 1), 1.0), -2.0);
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const StepFn f = random_step(rng, StepSpec{1 + trial % 2, 8, 1.0, 0.2});
    const StepFn g = random_step(rng, StepSpec{1 + trial % 2, 8, 1.0, 0.2});
    EXPECT_LE(std::fabs(lamperti_functional(f, g, 2.0)), 1e-12);
  }
}

TEST(LampertiFunctional, DetectsDisjointness) {
  Rng rng(2);
  for (double p : {1.0, 1.5, 3.0}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = random_partition(rng, 6, 0.05);
      std::vector<double> fv(6, 0.0);
      std::vector<double> gv(6, 0.0);
      for (int k = 0; k < 6; ++k) {
        const double v = rng.uniform(0.1, 1.0) * (rng.coin() ? 1 : -1);
        (k % 2 ? fv : gv)[k] = v;
      }
      const StepFn f = StepFn::scalar(b, fv);
      const StepFn g = StepFn::scalar(b, gv);
      EXPECT_LE(std::fabs(lamperti_functional(f, g, p)), 1e-9);
      // Overlap on cell 0 (width >= 0.05, both values >= 0.1 in size).
      fv[0] = rng.uniform(0.1, 1.0);
      gv[0] = -rng.uniform(0.1, 1.0);
      const double v = lamperti_functional(StepFn::scalar(b, fv), StepFn::scalar(b, gv), p);
      EXPECT_GE(std::fabs(v), 1e-6);
      EXPECT_EQ(v < 0.0, p < 2.0);
    }
  }
}

TEST(OrbitClass, Examples) {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    EXPECT_EQ(orbit_class(chi(0, 1), p), OrbitClass::FullSupport);
    EXPECT_EQ(orbit_class(half_low(p), p), OrbitClass::PartialSupport);
  }
  EXPECT_ERRC(orbit_class(chi(0, 1, 0.9), 2.0), Errc::NotUnitNorm);
  EXPECT_ERRC(orbit_class(StepFn::constant(vec({1, 0})), 2.0), Errc::DimensionMismatch);
  EXPECT_EQ(to_string(OrbitClass::FullSupport), "FULL_SUPPORT");
  EXPECT_EQ(to_string(OrbitClass::PartialSupport), "PARTIAL_SUPPORT");
}

TEST(Rearrangement, Examples) {
  EXPECT_EQ(rearrangement_isometry(chi(0, 1), chi(0, 1), 2.0), LampertiIsometry::identity(2.0, kScalar));
  for (double p : {1.0, 2.0, 3.0}) {
    const LampertiIsometry T = rearrangement_isometry(half_low(p), half_high(p), p);
    const RearrangeMap swap({Piece{Interval(0.0, 0.5), Interval(0.5, 1.0)}, Piece{Interval(0.5, 1.0), Interval(0.0, 0.5)}});
    EXPECT_EQ(T.phi(), swap);
    EXPECT_EQ(T.weight(0), 1.0);
    EXPECT_EQ(T.weight(1), 1.0);
    EXPECT_EQ(T.sigma(), SigmaField::constant(XIsom::identity(1)));
    EXPECT_EQ(apply_lamperti(T, half_low(p)), half_high(p));
  }
  EXPECT_ERRC(rearrangement_isometry(chi(0, 1), half_low(2.0), 2.0), Errc::OrbitMismatch);
  EXPECT_ERRC(rearrangement_isometry(chi(0, 1, 2.0), chi(0, 1), 2.0), Errc::NotUnitNorm);
}

TEST(Rearrangement, RandomPairsAreMatched) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0}[trial % 4];
    const OrbitClass orbit = trial % 2 ? OrbitClass::FullSupport : OrbitClass::PartialSupport;
    const StepFn f = random_sphere_point(rng, orbit, p);
    const StepFn g = random_sphere_point(rng, orbit, p);
    const LampertiIsometry T = rearrangement_isometry(f, g, p);
    EXPECT_LE(norm_p(apply_lamperti(T, f) - g, p, 1.0), 1e-9) << "trial " << trial;
    // Certification: T is an isometry on unrelated probes too.
    const StepFn h = random_step(rng, StepSpec{1, 8, 1.0, 0.0});
    const double nh = norm_p(h, p, 1.0);
    EXPECT_LE(std::fabs(norm_p(apply_lamperti(T, h), p, 1.0) - nh), 1e-12 * nh);
  }
}

TEST(OrbitPath, Examples) {
  for (double p : {1.0, 2.0, 3.0}) {
    const StepFn f = half_low(p);
    for (const auto& x : orbit_path(f, f, p, 11)) EXPECT_LE(norm_p(x - f, p, 1.0), 1e-12);
    const auto path = orbit_path(half_low(p), half_high(p), p, 11);
    ASSERT_EQ(path.size(), 11u);
    EXPECT_LE(norm_p(path.front() - half_high(p), p, 1.0), 1e-9);
    EXPECT_LE(norm_p(path.back() - half_low(p), p, 1.0), 1e-9);
    for (const auto& x : path) {
      EXPECT_NEAR(norm_p(x, p, 1.0), 1.0, 1e-9);
      EXPECT_EQ(orbit_class(x, p), OrbitClass::PartialSupport);
    }
  }
  EXPECT_ERRC(orbit_path(chi(0, 1), chi(0, 1), 2.0, 1), Errc::InvalidArgument);
  EXPECT_ERRC(orbit_path(chi(0, 1), half_low(2.0), 2.0, 5), Errc::OrbitMismatch);
}

TEST(OrbitPath, RandomFullSupportPathsHaveSmallSteps) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const StepFn f = random_sphere_point(rng, OrbitClass::FullSupport, 1.0);
    const StepFn g = random_sphere_point(rng, OrbitClass::FullSupport, 1.0);
    const auto path = orbit_path(f, g, 1.0, 101);
    for (std::size_t k = 1; k < path.size(); ++k) {
      EXPECT_LT(norm_p(path[k] - path[k - 1], 1.0, 1.0), 0.5) << "trial " << trial << " step " << k;
    }
  }
}

static double max_step(const std::vector<StepFn>& path, double p) {
  double m = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) m = std::max(m, norm_p(path[k] - path[k - 1], p, 1.0));
  return m;
}

// For p > 1 a narrow high-weight leg of T travels with t, so steps only shrink like dt^{1/p}.
TEST(OrbitPath, StepsShrinkUnderRefinement) {
  Rng rng(5);
  for (int trial = 0; trial < 16; ++trial) {
    const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0}[trial % 4];
    const StepFn f = random_sphere_point(rng, OrbitClass::FullSupport, p);
    const StepFn g = random_sphere_point(rng, OrbitClass::FullSupport, p);
    const double coarse = max_step(orbit_path(f, g, p, 101), p);
    const double fine = max_step(orbit_path(f, g, p, 1001), p);
    EXPECT_LT(fine, coarse) << "trial " << trial << " p " << p;
  }
}

TEST(DenseApprox, Examples) {
  EXPECT_EQ(orbit_dense_approx(chi(0, 1), 0.1, 2.0), chi(0, 1));
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (double eps : {0.1, 1e-3, 1e-6}) {
      const StepFn g = half_low(p);
      const StepFn r = orbit_dense_approx(g, eps, p);
      EXPECT_EQ(orbit_class(r, p), OrbitClass::FullSupport);
      EXPECT_NEAR(norm_p(r, p, 1.0), 1.0, 1e-12);
      EXPECT_LT(norm_p(r - g, p, 1.0), eps);
    }
  }
  EXPECT_ERRC(orbit_dense_approx(half_low(2.0), 0.0, 2.0), Errc::InvalidArgument);
}

TEST(Linfty, Examples) {
  const LampertiIsometry id = LampertiIsometry::identity(kInf, kSup);
  EXPECT_FALSE(linfty_separation(id, id).has_value());

  const auto neg = linfty_separation(id, linf(RearrangeMap::identity(), SigmaField::constant(XIsom::negation(1))));
  ASSERT_TRUE(neg.has_value());
  ASSERT_EQ(neg->A.size(), 1u);
  EXPECT_EQ(neg->A[0], Interval(0.0, 1.0));
  EXPECT_EQ(neg->distance, 2.0);

  const RearrangeMap swap({Piece{Interval(0.0, 0.5), Interval(0.5, 1.0)}, Piece{Interval(0.5, 1.0), Interval(0.0, 0.5)}});
  const auto half = linfty_separation(id, linf(swap, SigmaField::constant(XIsom::identity(1))));
  ASSERT_TRUE(half.has_value());
  EXPECT_EQ(half->A[0], Interval(0.0, 0.5));
  EXPECT_EQ(half->distance, 1.0);
}

TEST(Linfty, NoDensityWeight) {
  const LampertiIsometry T = linf(
      RearrangeMap({Piece{Interval(0.0, 0.5), Interval(0.0, 0.25)}, Piece{Interval(0.5, 1.0), Interval(0.25, 1.0)}}),
      SigmaField::constant(XIsom::identity(1)));
  EXPECT_EQ(linfty_apply(T, chi(0, 1)), chi(0, 1));
  EXPECT_EQ(linfty_apply(T, chi(0, 0.5)), chi(0, 0.25));
}

TEST(Linfty, RandomDistinctPairsSeparate) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const LampertiIsometry T = random_lamperti(rng.next(), 2 + static_cast<int>(rng.below(6)), kInf, kSup);
    const LampertiIsometry S = random_lamperti(rng.next(), 2 + static_cast<int>(rng.below(6)), kInf, kSup);
    const auto w = linfty_separation(T, S);
    ASSERT_TRUE(w.has_value());
    EXPECT_GE(w->distance, 1.0 - 1e-9);
    EXPECT_FALSE(linfty_separation(S, S).has_value());
    // A composite and its factors-in-sequence give the same map: no witness.
    EXPECT_FALSE(linfty_separation(compose_lamperti(T, S), compose_lamperti(T, S)).has_value());
  }
}
