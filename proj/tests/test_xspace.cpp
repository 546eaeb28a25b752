#include "support.hpp"

using namespace lpiso;
using lpiso::test::vec;

TEST(XNorm, Examples) {
  EXPECT_EQ(x_norm(vec({3, 4}), XSpec(2, 2.0)), 5.0);
  EXPECT_EQ(x_norm(vec({3, 4}), XSpec(2, kInf)), 4.0);
  EXPECT_EQ(x_norm(vec({1, 1, 1}), XSpec(3, 1.0)), 3.0);
  EXPECT_ERRC(x_norm(vec({1, 1}), XSpec(3, 1.0)), Errc::DimensionMismatch);
}

TEST(XSpec, RejectsBadParameters) {
  EXPECT_ERRC(XSpec(0, 2.0), Errc::InvalidArgument);
  EXPECT_ERRC(XSpec(2, 0.5), Errc::InvalidArgument);
}

TEST(XIsom, Validation) {
  EXPECT_ERRC(XIsom({0, 0}, {1, 1}), Errc::InvalidArgument);
  EXPECT_ERRC(XIsom({0, 2}, {1, 1}), Errc::InvalidArgument);
  EXPECT_ERRC(XIsom({0, 1}, {1, 0}), Errc::InvalidArgument);
  EXPECT_ERRC(XIsom({0, 1}, {1}), Errc::DimensionMismatch);
}

TEST(XApply, Examples) {
  const Vector v = vec({3, 4});
  EXPECT_EQ(x_apply(XIsom::identity(2), v), v);
  const XIsom s({1, 0}, {-1, 1});
  const Vector w = x_apply(s, v);
  EXPECT_EQ(w, vec({-4, 3}));
  for (NormExponent q : {NormExponent(1.0), NormExponent(2.0), NormExponent::infinity()}) {
    EXPECT_EQ(x_norm(w, XSpec(2, q)), x_norm(v, XSpec(2, q)));
  }
  EXPECT_ERRC(x_apply(s, vec({1, 2, 3})), Errc::DimensionMismatch);
}

TEST(XCompose, Examples) {
  const XIsom s = x_random(5, 4);
  EXPECT_TRUE(x_compose(s, x_invert(s)).is_identity());
  EXPECT_EQ(x_invert(XIsom::identity(3)), XIsom::identity(3));
  EXPECT_EQ(x_random(42, 5), x_random(42, 5));
  EXPECT_ERRC(x_compose(XIsom::identity(2), XIsom::identity(3)), Errc::DimensionMismatch);
}

TEST(XIsom, IsometryForEveryQ) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(6));
    const XIsom s = random_xisom(rng, d);
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.uniform(-10, 10);
    const NormExponent q = trial % 4 == 0 ? kInf : NormExponent(rng.uniform(1.0, 6.0));
    const double n = x_norm(v, XSpec(d, q));
    EXPECT_LE(std::fabs(x_norm(x_apply(s, v), XSpec(d, q)) - n), 1e-15 * n);
  }
}

TEST(XIsom, GroupLaws) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(6));
    const XIsom s = random_xisom(rng, d);
    const XIsom t = random_xisom(rng, d);
    const XIsom u = random_xisom(rng, d);
    EXPECT_EQ(x_compose(s, x_compose(t, u)), x_compose(x_compose(s, t), u));
    EXPECT_EQ(x_compose(s, XIsom::identity(d)), s);
    EXPECT_EQ(x_compose(XIsom::identity(d), s), s);
    EXPECT_TRUE(x_compose(x_invert(s), s).is_identity());
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.uniform(-1, 1);
    EXPECT_EQ(x_apply(x_compose(s, x_invert(s)), v), v);
    EXPECT_EQ(x_apply(x_compose(s, t), v), x_apply(s, x_apply(t, v)));
  }
}

TEST(Rng, DeterministicAndSplittable) {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_EQ(derive_seed(1, "x", 3), derive_seed(1, "x", 3));
  EXPECT_NE(derive_seed(1, "x", 3), derive_seed(1, "x", 4));
  EXPECT_NE(derive_seed(1, "x", 3), derive_seed(1, "y", 3));
  EXPECT_NE(derive_seed(1, "x", 3), derive_seed(2, "x", 3));
  Rng c(4);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    ASSERT_TRUE(u >= 0.0 && u < 1.0);
    ASSERT_LT(c.below(7), 7u);
  }
}

TEST(Rng, PartitionRespectsMinimumCell) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int cells = 1 + static_cast<int>(rng.below(20));
    const auto b = random_partition(rng, cells, 0.02);
    ASSERT_EQ(b.size(), static_cast<std::size_t>(cells) + 1);
    EXPECT_EQ(b.front(), 0.0);
    EXPECT_EQ(b.back(), 1.0);
    for (int k = 0; k < cells; ++k) EXPECT_GE(b[k + 1] - b[k], 0.02 - 1e-15);
  }
}
