#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "viscid/level_set.hpp"

using namespace viscid;

TEST(EdgeOccupancy, Examples) {
  EXPECT_DOUBLE_EQ(edge_occupancy(0.5, -0.5), 0.5);
  EXPECT_DOUBLE_EQ(edge_occupancy(-0.1, -0.9), 1.0);
  EXPECT_DOUBLE_EQ(edge_occupancy(0.75, -0.25), 0.25);
  EXPECT_DOUBLE_EQ(edge_occupancy(0.3, 0.2), 0.0);
  EXPECT_DOUBLE_EQ(edge_occupancy(0.0, 0.0), 1.0);
}

TEST(EdgeOccupancy, OrderIndependentAndMonotone) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const double a = u(rng), b = u(rng), s = std::abs(u(rng));
    EXPECT_EQ(edge_occupancy(a, b), edge_occupancy(b, a));
    const double e = edge_occupancy(a, b);
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 1.0);
    EXPECT_LE(edge_occupancy(a + s, b), e + 1e-15);
    EXPECT_LE(edge_occupancy(a, b + s), e + 1e-15);
  }
}

TEST(FluidVolumes, FullAndEmpty) {
  const GridDims d(5, 4, 0.1);
  const VolumeFractions2 full = fluid_volumes(LevelSet2(d, -1.0), d);
  const VolumeFractions2 empty = fluid_volumes(LevelSet2(d, 1.0), d);
  for (const Field2* f : {&full.cell, &full.u_face, &full.v_face, &full.node})
    for (double x : f->data()) EXPECT_EQ(x, 1.0);
  for (const Field2* f : {&empty.cell, &empty.u_face, &empty.v_face, &empty.node})
    for (double x : f->data()) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(fluid_volumes(LevelSet2(GridDims(4, 4, 0.1)), d), ShapeError);
}

TEST(FluidVolumes, HalfSpaceMatchesMonteCarloArea) {
  std::mt19937_64 rng(11);
  const int n = 8;
  const GridDims d(n, n, 0.125);
  const double level = 0.5 * n * d.dx + 0.3 * d.dx;
  LevelSet2 ls(d);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) ls.phi(i, j) = node_pos(d, i, j).y - level;
  const VolumeFractions2 v = fluid_volumes(ls, d);
  for (int i = 0; i < n; ++i) {
    const double x0 = i * d.dx;
    const double mc = oracle::monte_carlo_fraction([&](double, double y) { return y < level; }, x0, 0.0, x0 + d.dx,
                                                   n * d.dx, 200000, rng);
    double column = 0.0;
    for (int j = 0; j < n; ++j) column += v.cell(i, j);
    EXPECT_NEAR(column / n, mc, 1.0 / (2 * n));
  }
}

TEST(FluidVolumes, TransposeInvariance) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GridDims d(6, 4, 0.1), t(4, 6, 0.1);
  LevelSet2 a(d), b(t);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) b.phi(j, i) = a.phi(i, j) = u(rng);
  const VolumeFractions2 va = fluid_volumes(a, d), vb = fluid_volumes(b, t);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) EXPECT_EQ(va.cell(i, j), vb.cell(j, i));
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) EXPECT_EQ(va.u_face(i, j), vb.v_face(j, i));
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) EXPECT_EQ(va.node(i, j), vb.node(j, i));
}

TEST(SolidIndicator, Examples) {
  const GridDims d(4, 3, 0.1);
  const Field2 open = solid_indicator(SolidSdf2(d, 1.0));
  const Field2 closed = solid_indicator(SolidSdf2(d, 0.0));
  for (double x : open.data()) EXPECT_EQ(x, 0.0);
  for (double x : closed.data()) EXPECT_EQ(x, 1.0);
}

TEST(SolidIndicator, DiscMatchesRasterCount) {
  const GridDims d(20, 16, 0.05);
  SolidSdf2 s(d);
  const double cx = 0.5, cy = 0.4, r = 0.23;
  int expected = 0;
  for (int b = 0; b < d.sym_ny(); ++b)
    for (int a = 0; a < d.sym_nx(); ++a) {
      const double x = 0.5 * a * d.dx, y = 0.5 * b * d.dx;
      s.D(a, b) = std::hypot(x - cx, y - cy) - r;
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) ++expected;
    }
  const Field2 ind = solid_indicator(s);
  int count = 0;
  for (double x : ind.data()) {
    EXPECT_TRUE(x == 0.0 || x == 1.0);
    count += x == 1.0;
  }
  EXPECT_EQ(count, expected);
}

TEST(LevelSetFromParticles, UnionOfDiscs) {
  const GridDims d(10, 10, 0.1);
  const std::vector<Vec2> pts{{0.5, 0.5}, {0.21, 0.73}};
  const double r = default_particle_radius(d);
  const LevelSet2 ls = level_set_from_particles(pts, r, d);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const Vec2 x = node_pos(d, i, j);
      const double want = std::min(std::hypot(x.x - 0.5, x.y - 0.5), std::hypot(x.x - 0.21, x.y - 0.73)) - r;
      if (want <= 2.0 * d.dx)
        EXPECT_NEAR(ls.phi(i, j), want, 1e-12);
      else
        EXPECT_GT(ls.phi(i, j), 0.0);
    }
}

TEST(ExtendIntoSolid, CoveredNodesTakeLiquidNeighbours) {
  const GridDims d(6, 6, 0.1);
  LevelSet2 ls(d, 1.0);
  for (int i = 0; i <= d.nx; ++i) ls.phi(i, 1) = -0.05;
  SolidSdf2 s(d, 1.0);
  for (int a = 0; a < d.sym_nx(); ++a) s.D(a, 0) = 0.0;
  extend_into_solid(ls, s, d);
  for (int i = 0; i <= d.nx; ++i) EXPECT_LT(ls.phi(i, 0), 0.0);
  for (int i = 0; i <= d.nx; ++i) EXPECT_EQ(ls.phi(i, 2), 1.0);
}

TEST(SampleSolid, BilinearOnSymmetricLattice) {
  const GridDims d(4, 4, 0.2);
  SolidSdf2 s(d);
  for (int b = 0; b < d.sym_ny(); ++b)
    for (int a = 0; a < d.sym_nx(); ++a) s.D(a, b) = 0.5 * a * d.dx - 0.3;
  EXPECT_NEAR(sample_solid(s, d, {0.37, 0.51}), 0.07, 1e-12);
  const Vec2 g = solid_gradient(s, d, {0.37, 0.51});
  EXPECT_NEAR(g.x, 1.0, 1e-9);
  EXPECT_NEAR(g.y, 0.0, 1e-9);
}
