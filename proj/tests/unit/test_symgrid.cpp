#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "viscid/level_set.hpp"
#include "viscid/symgrid.hpp"

using namespace viscid;

namespace {

struct Raw {
  GridDims d;
  MacVelocity2 vel;
  VolumeFractions2 vols;
  SolidSdf2 solid;
  Field2 mu;
};

Raw random_raw(int nx, int ny, std::mt19937_64& rng) {
  const GridDims d(nx, ny, 0.1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LevelSet2 ls(d);
  for (double& x : ls.phi.data()) x = u(rng);
  Raw r{d, oracle::random_velocity(d, rng), fluid_volumes(ls, d), SolidSdf2(d), Field2(nx, ny)};
  for (double& x : r.solid.D.data()) x = u(rng);
  for (double& x : r.mu.data()) x = 5.0 + u(rng);
  return r;
}

}  // namespace

TEST(SymIndex, FamiliesPartitionTheGrid) {
  const GridDims d(5, 3, 1.0);
  Array2<int> hits(d.sym_nx(), d.sym_ny(), 0);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const SymIndex s = sym::cell(i, j);
      ++hits(s.a, s.b);
      EXPECT_EQ(sym::family(s.a, s.b), SymFamily::Cell);
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const SymIndex s = sym::node(i, j);
      ++hits(s.a, s.b);
      EXPECT_EQ(sym::family(s.a, s.b), SymFamily::Node);
    }
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const SymIndex s = sym::u_face(i, j);
      ++hits(s.a, s.b);
      EXPECT_EQ(sym::family(s.a, s.b), SymFamily::UFace);
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const SymIndex s = sym::v_face(i, j);
      ++hits(s.a, s.b);
      EXPECT_EQ(sym::family(s.a, s.b), SymFamily::VFace);
    }
  for (int h : hits.data()) EXPECT_EQ(h, 1);
}

TEST(Encode, ShapeAndChannelCount) {
  std::mt19937_64 rng(1);
  const Raw r = random_raw(6, 4, rng);
  const ChannelStack a = encode(r.vel, r.vols, r.solid, nullptr, r.d);
  EXPECT_EQ(a.channels, kBaseChannels);
  EXPECT_EQ(a.height, 13);
  EXPECT_EQ(a.width, 9);
  EXPECT_EQ(encode(r.vel, r.vols, r.solid, &r.mu, r.d).channels, kChannelsWithCoeff);
  EXPECT_THROW(encode(r.vel, r.vols, r.solid, nullptr, GridDims(5, 4, 0.1)), ShapeError);
}

TEST(Encode, ConstantVelocityHasZeroDerivatives) {
  const GridDims d(5, 5, 0.1);
  const ChannelStack s = encode(MacVelocity2(d, 2.0, -3.0), VolumeFractions2(d, 1.0), SolidSdf2(d), nullptr, d);
  for (int c = kDuDx; c <= kDvDx; ++c)
    for (std::size_t k = 0; k < s.plane(); ++k) EXPECT_EQ(s.channel(c)[k], 0.0f);
}

TEST(Encode, EmptyScene) {
  const GridDims d(4, 6, 0.1);
  SolidSdf2 solid(d, 1.0);
  for (int b = 0; b < d.sym_ny(); ++b) solid.D(0, b) = -0.5;
  const Field2 mu(d.nx, d.ny, 3.0);
  const ChannelStack s = encode(MacVelocity2(d), VolumeFractions2(d, 0.0), solid, &mu, d);
  for (int a = 0; a < s.height; ++a)
    for (int b = 0; b < s.width; ++b) {
      EXPECT_EQ(s(kFluidVolume, a, b), 0.0f);
      EXPECT_EQ(s(kViscosityCoeff, a, b), 0.0f);
      EXPECT_EQ(s(kSolidIndicator, a, b), a == 0 ? 1.0f : 0.0f);
    }
}

TEST(Encode, ChannelsLiveOnlyAtTheirFamilies) {
  std::mt19937_64 rng(2);
  const Raw r = random_raw(7, 5, rng);
  const ChannelStack s = encode(r.vel, r.vols, r.solid, &r.mu, r.d);
  const VelocityGradients2 g = velocity_gradients(r.vel, r.d);
  for (int a = 0; a < s.height; ++a)
    for (int b = 0; b < s.width; ++b) {
      const SymFamily f = sym::family(a, b);
      if (f != SymFamily::Cell) {
        EXPECT_EQ(s(kDuDx, a, b), 0.0f);
        EXPECT_EQ(s(kDvDy, a, b), 0.0f);
        EXPECT_EQ(s(kViscosityCoeff, a, b), 0.0f);
      }
      if (f != SymFamily::Node) {
        EXPECT_EQ(s(kDuDy, a, b), 0.0f);
        EXPECT_EQ(s(kDvDx, a, b), 0.0f);
      }
      const float ind = s(kSolidIndicator, a, b);
      EXPECT_EQ(ind, r.solid.D(a, b) <= 0.0 ? 1.0f : 0.0f);
      EXPECT_GE(s(kFluidVolume, a, b), 0.0f);
      EXPECT_LE(s(kFluidVolume, a, b), 1.0f);
    }
  for (int j = 0; j < r.d.ny; ++j)
    for (int i = 0; i < r.d.nx; ++i) {
      const SymIndex c = sym::cell(i, j);
      EXPECT_EQ(s(kDuDx, c.a, c.b), static_cast<float>(g.du_dx(i, j)));
      EXPECT_EQ(s(kFluidVolume, c.a, c.b), static_cast<float>(r.vols.cell(i, j)));
      EXPECT_EQ(s(kViscosityCoeff, c.a, c.b), r.vols.cell(i, j) > 0.0 ? static_cast<float>(r.mu(i, j)) : 0.0f);
    }
  for (int j = 0; j <= r.d.ny; ++j)
    for (int i = 0; i <= r.d.nx; ++i) {
      const SymIndex n = sym::node(i, j);
      EXPECT_EQ(s(kDvDx, n.a, n.b), static_cast<float>(g.dv_dx(i, j)));
      EXPECT_EQ(s(kFluidVolume, n.a, n.b), static_cast<float>(r.vols.node(i, j)));
    }
  for (int j = 0; j < r.d.ny; ++j)
    for (int i = 0; i <= r.d.nx; ++i) {
      const SymIndex u = sym::u_face(i, j);
      EXPECT_EQ(s(kFluidVolume, u.a, u.b), static_cast<float>(r.vols.u_face(i, j)));
    }
}

TEST(Decode, RoundTripZeroAndIgnoredPositions) {
  std::mt19937_64 rng(3);
  const GridDims d(6, 7, 0.1);
  MacVelocity2 v = oracle::random_velocity(d, rng);
  for (double& x : v.u.data()) x = static_cast<float>(x);
  for (double& x : v.v.data()) x = static_cast<float>(x);
  Tensor t = scatter_velocity(v, d);
  EXPECT_TRUE(decode(t, d) == v);
  EXPECT_EQ(max_abs(decode(Tensor(2, d.sym_nx(), d.sym_ny()), d)), 0.0);
  for (int a = 0; a < t.height; ++a)
    for (int b = 0; b < t.width; ++b) {
      if (sym::family(a, b) != SymFamily::UFace) t(0, a, b) = 99.0f;
      if (sym::family(a, b) != SymFamily::VFace) t(1, a, b) = -99.0f;
    }
  EXPECT_TRUE(decode(t, d) == v);
  EXPECT_THROW(decode(Tensor(2, 3, 3), d), ShapeError);
}

TEST(Padding, AlreadyDivisibleIsIdentity) {
  std::mt19937_64 rng(4);
  const Tensor x = oracle::random_tensor(6, 16, 32, rng);
  const PaddingSpec s = make_padding(16, 32, 4, PadMode::Centered);
  EXPECT_EQ(s.top, 0);
  EXPECT_EQ(s.left, 0);
  EXPECT_TRUE(pad(x, s) == x);
}

TEST(Padding, TwoHundredOneToMultipleOfSixteen) {
  const Tensor x(6, 201, 201, 0.5f);
  const PaddingSpec s = make_padding(201, 201, 4, PadMode::Centered);
  EXPECT_EQ(s.height, 208);
  EXPECT_EQ(s.width, 208);
  EXPECT_EQ(s.top, 3);
  EXPECT_EQ(s.left, 3);
  const Tensor p = pad(x, s);
  for (int a = 0; a < 208; ++a)
    for (int b = 0; b < 208; ++b) {
      const bool inside = a >= 3 && a < 204 && b >= 3 && b < 204;
      EXPECT_EQ(p(kSolidIndicator, a, b), inside ? 0.5f : 1.0f);
      EXPECT_EQ(p(kDuDx, a, b), inside ? 0.5f : 0.0f);
      EXPECT_EQ(p(kFluidVolume, a, b), inside ? 0.5f : 0.0f);
    }
}

TEST(Padding, UnpadInvertsPadForAnyOffsets) {
  std::mt19937_64 rng(5);
  const Tensor x = oracle::random_tensor(7, 11, 9, rng);
  for (int k = 0; k < 20; ++k) {
    const PaddingSpec s = make_padding(11, 9, 2, PadMode::Random, &rng);
    EXPECT_EQ(s.height % 4, 0);
    EXPECT_LE(s.top, s.height - 11);
    EXPECT_TRUE(unpad(pad(x, s), s, 11, 9) == x);
  }
  EXPECT_THROW(make_padding(11, 9, 2, PadMode::Random), InvalidArgument);
}

TEST(Symmetry, MirrorCommutesWithCenteredPaddingAtMirroredOffsets) {
  std::mt19937_64 rng(6);
  const Raw r = random_raw(12, 12, rng);
  const ChannelStack s = encode(r.vel, r.vols, r.solid, nullptr, r.d);
  const PaddingSpec spec = make_padding(s.height, s.width, 2, PadMode::Centered);
  PaddingSpec mirrored = spec;
  mirrored.top = spec.height - s.height - spec.top;
  EXPECT_TRUE(pad(mirror_input_x(s), mirrored) == mirror_input_x(pad(s, spec)));
}

TEST(Symmetry, NaiveLayoutBreaksMirrorEquality) {
  std::mt19937_64 rng(7);
  const GridDims d(6, 5, 0.1);
  MacVelocity2 v = oracle::random_velocity(d, rng);
  for (double& x : v.u.data()) x = static_cast<float>(x);
  for (double& x : v.v.data()) x = static_cast<float>(x);
  MacVelocity2 m(d);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) m.u(i, j) = -v.u(d.nx - i, j);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) m.v(i, j) = v.v(d.nx - 1 - i, j);
  const Tensor naive = naive_mac_stack(v, d);
  EXPECT_EQ(naive.height, d.nx + 1);
  EXPECT_EQ(naive.width, d.ny + 1);
  EXPECT_FALSE(naive_mac_stack(m, d) == mirror_output_x(naive));
  const VolumeFractions2 vols(d, 1.0);
  const SolidSdf2 solid(d, 1.0);
  EXPECT_TRUE(encode(m, vols, solid, nullptr, d) == mirror_input_x(encode(v, vols, solid, nullptr, d)));
  EXPECT_TRUE(decode(mirror_output_x(scatter_velocity(v, d)), d) == m);
}

TEST(Symmetry, TransposeSwapsChannels) {
  std::mt19937_64 rng(8);
  const Tensor x = oracle::random_tensor(7, 5, 3, rng);
  const Tensor t = transpose_input(x);
  EXPECT_EQ(t.height, 3);
  EXPECT_EQ(t.width, 5);
  EXPECT_EQ(t(0, 1, 4), x(1, 4, 1));
  EXPECT_EQ(t(2, 2, 0), x(3, 0, 2));
  EXPECT_EQ(t(6, 2, 3), x(6, 3, 2));
  EXPECT_TRUE(transpose_input(t) == x);
  const Tensor o = oracle::random_tensor(2, 5, 3, rng);
  EXPECT_TRUE(transpose_output(transpose_output(o)) == o);
  EXPECT_TRUE(mirror_output_x(mirror_output_x(o)) == o);
}

TEST(DecodeGradients, RoundTrip) {
  std::mt19937_64 rng(9);
  const Raw r = random_raw(5, 8, rng);
  const VelocityGradients2 g = velocity_gradients(r.vel, r.d);
  const VelocityGradients2 back = decode_gradients(encode(g, r.vols, r.solid, nullptr, r.d), r.d);
  for (std::size_t k = 0; k < g.du_dy.size(); ++k)
    EXPECT_EQ(back.du_dy.data()[k], static_cast<double>(static_cast<float>(g.du_dy.data()[k])));
  for (std::size_t k = 0; k < g.dv_dy.size(); ++k)
    EXPECT_EQ(back.dv_dy.data()[k], static_cast<double>(static_cast<float>(g.dv_dy.data()[k])));
}
