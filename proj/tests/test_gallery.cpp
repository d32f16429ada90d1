#include <gtest/gtest.h>

#include "cbq/classifier.hpp"
#include "cbq/gallery.hpp"
#include "test_support.hpp"

namespace cbq {
namespace {

using testing::pt;
const Complex i{0.0, 1.0};

TEST(Builtin, Examples) {
  EXPECT_EQ(apply_map(builtin("conjugation", 3), pt({i, 1, 2.0 - i})), pt({-i, 1, 2.0 + i}));
  EXPECT_EQ(apply_map(builtin("im_shift_1d", 1), pt({2.0 + 3.0 * i})), pt({5.0 + 3.0 * i}));
  BuiltinParams p;
  p.d = Complex(1.0, 1.0);
  EXPECT_LE(max_abs_diff(apply_map(builtin("tau_d", 1, p), pt({1})), pt({i})), 1e-15);
  EXPECT_EQ(apply_map(builtin("identity", 2), pt({i, 3})), pt({i, 3}));
}

TEST(Builtin, Errors) {
  EXPECT_THROW(builtin("rotation", 2), InputError);
  EXPECT_THROW(builtin("im_shift_1d", 2), DimensionError);
  EXPECT_THROW(builtin("im_shift_nd", 1), DimensionError);
  EXPECT_THROW(builtin("tau_d", 2), InputError);
  EXPECT_THROW(apply_map(builtin("identity", 2), pt({1})), DimensionError);
}

TEST(Builtin, RandomSemiAffineIsSeeded) {
  BuiltinParams p;
  p.seed = 9;
  const MapSpec a = builtin("random_semi_affine", 3, p);
  const MapSpec b = builtin("random_semi_affine", 3, p);
  const Point x = pt({1.0 + i, -0.5, 2.0 * i});
  EXPECT_EQ(apply_map(a, x), apply_map(b, x));
  p.seed = 10;
  EXPECT_NE(apply_map(builtin("random_semi_affine", 3, p), x), apply_map(a, x));
}

TEST(ProbePreserves, Examples) {
  const auto id = probe_preserves(builtin("identity", 3), 3, Complex(0.7, 0.2), 100, 1);
  EXPECT_TRUE(id.pass);
  // Only the rounding in building Y = X + d v remains.
  EXPECT_LE(id.distances.front().max_residual, 1e-15);

  const auto shift = probe_preserves(builtin("im_shift_nd", 2), 2, 1.0, 100, 1);
  EXPECT_FALSE(shift.pass);
  const auto& worst = shift.distances.front();
  EXPECT_LE(std::abs(phi(worst.worst_x, worst.worst_y) - 1.0), 1e-9);
  EXPECT_GT(std::abs(worst.worst_observed - 1.0), 1e-3);

  BuiltinParams p;
  p.d = Complex(1.0, 1.0);
  EXPECT_FALSE(probe_preserves(builtin("tau_d", 2, p), 2, 1.0, 100, 1).pass);
  EXPECT_TRUE(probe_preserves(builtin("tau_d", 2, p), 2, Complex(1.0, 1.0), 100, 1).pass);

  EXPECT_THROW(probe_preserves(builtin("identity", 2), 2, 0.0, 10, 1), InputError);
  EXPECT_THROW(probe_preserves(builtin("identity", 2), 2, std::vector<Complex>{}, 10, 1), InputError);
}

TEST(ProbePreserves, IsDeterministic) {
  const MapSpec f = builtin("im_shift_nd", 3);
  const auto a = probe_preserves(f, 3, positive_distance_grid(5), 20, 77);
  const auto b = probe_preserves(f, 3, positive_distance_grid(5), 20, 77);
  ASSERT_EQ(a.distances.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(a.distances[k].max_residual, b.distances[k].max_residual);
    EXPECT_EQ(a.distances[k].worst_x, b.distances[k].worst_x);
  }
}

// z + Im(z) keeps every positive real distance in C, but a pair with an
// imaginary difference (phi = -1) exposes it.
TEST(ImShift1d, PassesRealGridButIsNotRigid) {
  const MapSpec f = builtin("im_shift_1d", 1);
  const auto grid = positive_distance_grid();
  ASSERT_EQ(grid.size(), 50u);
  EXPECT_DOUBLE_EQ(grid.back().real(), 5.0);
  EXPECT_TRUE(probe_preserves(f, 1, grid, 100, 3).pass);
  EXPECT_FALSE(classify_dim1(f).rigid());
}

TEST(Gallery, ExpectedVerdictsMatchClassifier) {
  int checked = 0;
  for (const auto& entry : gallery_entries()) {
    for (Eigen::Index n = 1; n <= 4; ++n) {
      if (!entry.accepts(n)) continue;
      for (const Complex d : {Complex(1.0, 1.0), Complex(2.0, 0.0), Complex(0.0, 1.0)}) {
        BuiltinParams params;
        params.d = d;
        params.seed = static_cast<std::uint64_t>(n) * 17;
        const auto report = classify(builtin(entry.name, n, params));
        const ExpectedVerdict expected = entry.expected(n, params);
        ASSERT_EQ(report.rigid(), expected.rigid) << entry.name << " n=" << n << " d=" << d;
        if (report.rigid()) {
          EXPECT_EQ(rho_name(report.as_rigid().rho), expected.rho) << entry.name;
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(Gallery, Listing) {
  EXPECT_EQ(gallery_entries().size(), 6u);
  EXPECT_TRUE(gallery_entry("im_shift_nd").invented);
  EXPECT_FALSE(gallery_entry("tau_d").invented);
  EXPECT_THROW(gallery_entry("nope"), InputError);
}

}  // namespace
}  // namespace cbq
