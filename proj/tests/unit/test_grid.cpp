#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "viscid/grid.hpp"

using namespace viscid;

namespace {

// Differencing rebuilt from index arithmetic: centered between the two
// adjacent samples, the nearest pair at boundary nodes.
double oracle_du_dy(const MacVelocity2& v, const GridDims& d, int i, int j) {
  int lo = j - 1, hi = j;
  if (j == 0) lo = 0, hi = 1;
  if (j == d.ny) lo = d.ny - 2, hi = d.ny - 1;
  return (v.u(i, hi) - v.u(i, lo)) / d.dx;
}

double oracle_dv_dx(const MacVelocity2& v, const GridDims& d, int i, int j) {
  int lo = i - 1, hi = i;
  if (i == 0) lo = 0, hi = 1;
  if (i == d.nx) lo = d.nx - 2, hi = d.nx - 1;
  return (v.v(hi, j) - v.v(lo, j)) / d.dx;
}

}  // namespace

TEST(GridDims, RejectsDegenerateGrids) {
  EXPECT_THROW(GridDims(1, 4, 0.1), InvalidArgument);
  EXPECT_THROW(GridDims(4, 0, 0.1), InvalidArgument);
  EXPECT_THROW(GridDims(4, 4, 0.0), InvalidArgument);
  EXPECT_THROW(GridDims(4, 4, -1.0), InvalidArgument);
  const GridDims d(5, 3, 0.5);
  EXPECT_EQ(d.sym_nx(), 11);
  EXPECT_EQ(d.sym_ny(), 7);
  EXPECT_EQ(d.face_count(), 6u * 3u + 5u * 4u);
  EXPECT_DOUBLE_EQ(d.width(), 2.5);
}

TEST(MacVelocity2, ShapesFollowTheStaggering) {
  const GridDims d(4, 3, 0.1);
  const MacVelocity2 v(d);
  EXPECT_EQ(v.u.ni(), 5);
  EXPECT_EQ(v.u.nj(), 3);
  EXPECT_EQ(v.v.ni(), 4);
  EXPECT_EQ(v.v.nj(), 4);
  EXPECT_TRUE(v.matches(d));
  EXPECT_FALSE(v.matches(GridDims(3, 4, 0.1)));
  EXPECT_THROW(velocity_gradients(v, GridDims(3, 4, 0.1)), ShapeError);
}

TEST(VelocityGradients, ConstantFieldHasZeroGradients) {
  const GridDims d(6, 5, 0.2);
  const VelocityGradients2 g = velocity_gradients(MacVelocity2(d, 3.0, -2.0), d);
  for (const Field2* f : {&g.du_dx, &g.dv_dy, &g.du_dy, &g.dv_dx})
    for (double x : f->data()) EXPECT_EQ(x, 0.0);
}

TEST(VelocityGradients, LinearShear) {
  const GridDims d(6, 5, 0.25);
  MacVelocity2 v(d);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) v.u(i, j) = u_face_pos(d, i, j).y;
  const VelocityGradients2 g = velocity_gradients(v, d);
  for (int j = 1; j < d.ny; ++j)
    for (int i = 1; i < d.nx; ++i) {
      EXPECT_NEAR(g.du_dy(i, j), 1.0, 1e-12);
      EXPECT_EQ(g.dv_dx(i, j), 0.0);
    }
  for (double x : g.du_dx.data()) EXPECT_EQ(x, 0.0);
  for (double x : g.dv_dy.data()) EXPECT_EQ(x, 0.0);
}

TEST(VelocityGradients, MatchesIndexOracle) {
  std::mt19937_64 rng(3);
  for (auto [nx, ny] : {std::pair{2, 2}, {7, 4}, {3, 9}}) {
    const GridDims d(nx, ny, 0.07);
    const MacVelocity2 v = oracle::random_velocity(d, rng);
    const VelocityGradients2 g = velocity_gradients(v, d);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        EXPECT_NEAR(g.du_dx(i, j), (v.u(i + 1, j) - v.u(i, j)) / d.dx, 1e-12 * std::abs(g.du_dx(i, j)) + 1e-300);
        EXPECT_NEAR(g.dv_dy(i, j), (v.v(i, j + 1) - v.v(i, j)) / d.dx, 1e-12 * std::abs(g.dv_dy(i, j)) + 1e-300);
      }
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        const double a = oracle_du_dy(v, d, i, j), b = oracle_dv_dx(v, d, i, j);
        EXPECT_NEAR(g.du_dy(i, j), a, 1e-12 * std::abs(a));
        EXPECT_NEAR(g.dv_dx(i, j), b, 1e-12 * std::abs(b));
      }
  }
}

TEST(VelocityGradients, IsLinear) {
  std::mt19937_64 rng(4);
  const GridDims d(5, 6, 0.1);
  const MacVelocity2 a = oracle::random_velocity(d, rng), b = oracle::random_velocity(d, rng);
  MacVelocity2 mix(d);
  for (std::size_t k = 0; k < mix.u.size(); ++k) mix.u.data()[k] = 2.0 * a.u.data()[k] - 0.5 * b.u.data()[k];
  for (std::size_t k = 0; k < mix.v.size(); ++k) mix.v.data()[k] = 2.0 * a.v.data()[k] - 0.5 * b.v.data()[k];
  const VelocityGradients2 ga = velocity_gradients(a, d), gb = velocity_gradients(b, d), gm = velocity_gradients(mix, d);
  auto check = [](const Field2& m, const Field2& x, const Field2& y) {
    for (std::size_t k = 0; k < m.size(); ++k)
      EXPECT_NEAR(m.data()[k], 2.0 * x.data()[k] - 0.5 * y.data()[k], 1e-12 * (1.0 + std::abs(m.data()[k])));
  };
  check(gm.du_dx, ga.du_dx, gb.du_dx);
  check(gm.dv_dy, ga.dv_dy, gb.dv_dy);
  check(gm.du_dy, ga.du_dy, gb.du_dy);
  check(gm.dv_dx, ga.dv_dx, gb.dv_dx);
}

TEST(MacVelocity2, Arithmetic) {
  const GridDims d(3, 3, 1.0);
  const MacVelocity2 a(d, 1.0, 2.0), b(d, 0.5, -1.0);
  const MacVelocity2 s = a + b, t = a - b;
  EXPECT_EQ(s.u(1, 1), 1.5);
  EXPECT_EQ(s.v(2, 3), 1.0);
  EXPECT_EQ(t.v(0, 0), 3.0);
  EXPECT_EQ(max_abs(t), 3.0);
  EXPECT_THROW(a + MacVelocity2(GridDims(4, 3, 1.0)), ShapeError);
}
