#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "viscid/nn_ops.hpp"

using namespace viscid;

namespace {

Layer conv_layer(int in, int out, int k, std::mt19937_64& rng) {
  Layer l;
  l.kind = LayerKind::Conv;
  l.in_channels = in;
  l.out_channels = out;
  l.kernel_h = l.kernel_w = k;
  l.weight = oracle::random_tensor(1, 1, static_cast<int>(l.weight_count()), rng).data;
  l.bias = oracle::random_tensor(1, 1, out, rng).data;
  return l;
}

Layer tconv_layer(int in, int out, std::mt19937_64& rng) {
  Layer l = conv_layer(in, out, 2, rng);
  l.kind = LayerKind::TransposedConv;
  return l;
}

}  // namespace

TEST(Conv2d, IdentityKernel) {
  std::mt19937_64 rng(1);
  const Tensor x = oracle::random_tensor(3, 5, 7, rng);
  Layer l;
  l.in_channels = l.out_channels = 3;
  l.kernel_h = l.kernel_w = 1;
  l.weight = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  l.bias = {0, 0, 0};
  EXPECT_TRUE(conv2d(x, l) == x);
}

TEST(Conv2d, ZeroKernelGivesBias) {
  std::mt19937_64 rng(2);
  const Tensor x = oracle::random_tensor(3, 6, 4, rng);
  Layer l = conv_layer(3, 2, 3, rng);
  std::fill(l.weight.begin(), l.weight.end(), 0.0f);
  l.bias = {0.25f, -1.5f};
  const Tensor y = conv2d(x, l);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 4; ++b) {
      EXPECT_EQ(y(0, a, b), 0.25f);
      EXPECT_EQ(y(1, a, b), -1.5f);
    }
}

TEST(Conv2d, MatchesNaiveLoops) {
  std::mt19937_64 rng(3);
  for (auto [in, out, k, h, w] : {std::tuple{3, 4, 3, 9, 11}, {3, 5, 1, 4, 4}, {16, 8, 3, 20, 12}, {2, 3, 5, 7, 6}}) {
    const Tensor x = oracle::random_tensor(in, h, w, rng);
    const Layer l = conv_layer(in, out, k, rng);
    EXPECT_LE(oracle::max_abs_diff(conv2d(x, l), oracle::naive_conv2d(x, l)), 1e-5);
  }
}

TEST(Conv2d, RejectsMismatchedChannels) {
  std::mt19937_64 rng(4);
  const Layer l = conv_layer(3, 2, 3, rng);
  EXPECT_THROW(conv2d(Tensor(4, 5, 5), l), ShapeError);
}

TEST(Conv2d, TranslationCovarianceAwayFromBorders) {
  std::mt19937_64 rng(5);
  const Tensor x = oracle::random_tensor(2, 16, 16, rng);
  Tensor shifted(2, 16, 16);
  for (int c = 0; c < 2; ++c)
    for (int a = 2; a < 16; ++a)
      for (int b = 2; b < 16; ++b) shifted(c, a, b) = x(c, a - 2, b - 2);
  const Layer l = conv_layer(2, 3, 3, rng);
  const Tensor y = conv2d(x, l), ys = conv2d(shifted, l);
  for (int c = 0; c < 3; ++c)
    for (int a = 4; a < 14; ++a)
      for (int b = 4; b < 14; ++b) EXPECT_NEAR(ys(c, a, b), y(c, a - 2, b - 2), 1e-5);
}

TEST(AvgPool2, Examples) {
  const Tensor c(2, 4, 6, 3.5f);
  const Tensor p = avg_pool2(c);
  EXPECT_EQ(p.height, 2);
  EXPECT_EQ(p.width, 3);
  for (float v : p.data) EXPECT_EQ(v, 3.5f);
  Tensor b(1, 2, 2);
  b.data = {0, 2, 4, 6};
  EXPECT_EQ(avg_pool2(b)(0, 0, 0), 3.0f);
  EXPECT_THROW(avg_pool2(Tensor(1, 3, 4)), ShapeError);
}

TEST(AvgPool2, PreservesSumTimesFour) {
  std::mt19937_64 rng(6);
  const Tensor x = oracle::random_tensor(3, 8, 10, rng);
  double in = 0, out = 0;
  for (float v : x.data) in += v;
  for (float v : avg_pool2(x).data) out += v;
  EXPECT_NEAR(4.0 * out, in, 1e-4);
}

TEST(TransposedConv, ZeroInputZeroBias) {
  std::mt19937_64 rng(7);
  Layer l = tconv_layer(3, 2, rng);
  l.bias.assign(2, 0.0f);
  const Tensor y = tconv2_up(Tensor(3, 4, 5), l);
  EXPECT_EQ(y.height, 8);
  EXPECT_EQ(y.width, 10);
  for (float v : y.data) EXPECT_EQ(v, 0.0f);
}

TEST(TransposedConv, SingleSiteResponseIsTheKernel) {
  Layer l;
  l.kind = LayerKind::TransposedConv;
  l.in_channels = 1;
  l.out_channels = 1;
  l.kernel_h = l.kernel_w = 2;
  l.weight = {1, 2, 3, 4};
  l.bias = {0.5f};
  const Tensor x(1, 1, 1, 2.0f);
  const Tensor y = tconv2_up(x, l);
  EXPECT_EQ(y(0, 0, 0), 2.5f);
  EXPECT_EQ(y(0, 0, 1), 4.5f);
  EXPECT_EQ(y(0, 1, 0), 6.5f);
  EXPECT_EQ(y(0, 1, 1), 8.5f);
}

TEST(TransposedConv, MatchesNaiveAndIsAdjoint) {
  std::mt19937_64 rng(8);
  const Layer l = tconv_layer(6, 4, rng);
  const Tensor x = oracle::random_tensor(6, 5, 3, rng);
  EXPECT_LE(oracle::max_abs_diff(tconv2_up(x, l), oracle::naive_tconv2(x, l)), 1e-5);
  Layer nb = l;
  nb.bias.assign(4, 0.0f);
  const Tensor y = oracle::random_tensor(4, 10, 6, rng);
  const Tensor up = tconv2_up(x, nb), down = oracle::conv_s2(y, nb);
  double lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < x.data.size(); ++i) lhs += static_cast<double>(down.data[i]) * x.data[i];
  for (std::size_t i = 0; i < y.data.size(); ++i) rhs += static_cast<double>(up.data[i]) * y.data[i];
  EXPECT_NEAR(lhs, rhs, 1e-4);
}

TEST(Tanh, BoundedAndAccurate) {
  std::mt19937_64 rng(9);
  Tensor x = oracle::random_tensor(1, 30, 30, rng, 8.0f);
  const Tensor orig = x;
  tanh_inplace(x);
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    EXPECT_LE(std::abs(x.data[i]), 1.0f);
    EXPECT_NEAR(x.data[i], std::tanh(orig.data[i]), 2e-6);
  }
}

TEST(Concat, StacksChannels) {
  const Tensor a(2, 3, 3, 1.0f), b(1, 3, 3, 2.0f);
  const Tensor c = concat_channels(a, b);
  EXPECT_EQ(c.channels, 3);
  EXPECT_EQ(c(1, 2, 2), 1.0f);
  EXPECT_EQ(c(2, 0, 0), 2.0f);
  EXPECT_THROW(concat_channels(a, Tensor(1, 3, 4)), ShapeError);
}
