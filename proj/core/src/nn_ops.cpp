#include "viscid/nn_ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>

#include "viscid/parallel.hpp"

namespace viscid {

namespace {

using RowMat = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstRowMap = Eigen::Map<const RowMat>;
using RowMap = Eigen::Map<RowMat>;

// im2col scratch is capped per tile; rows per tile depend only on the layer
// and input shape.
constexpr std::size_t kTileFloats = std::size_t{1} << 20;

void check_layer(const Layer& l, LayerKind kind, const char* who) {
  if (l.kind != kind) throw ShapeError(std::string(who) + ": wrong layer kind for " + l.name);
  if (l.weight.size() != l.weight_count() || l.bias.size() != static_cast<std::size_t>(l.out_channels))
    throw ShapeError(std::string(who) + ": parameter count mismatch in " + l.name);
}

}  // namespace

Tensor conv2d(const Tensor& x, const Layer& l) {
  check_layer(l, LayerKind::Conv, "conv2d");
  if (x.channels != l.in_channels) throw ShapeError("conv2d: input has " + std::to_string(x.channels) +
                                                    " channels, layer " + l.name + " expects " +
                                                    std::to_string(l.in_channels));
  if (l.kernel_h % 2 == 0 || l.kernel_w % 2 == 0) throw ShapeError("conv2d: same padding needs odd kernels");

  const int H = x.height;
  const int W = x.width;
  const int cin = l.in_channels;
  const int kh = l.kernel_h;
  const int kw = l.kernel_w;
  const int ph = kh / 2;
  const int pw = kw / 2;
  const int K = cin * kh * kw;
  Tensor out(l.out_channels, H, W);
  const ConstRowMap weights(l.weight.data(), l.out_channels, K);

  // Output starts at the bias; the GEMM accumulates on top.
  for (int o = 0; o < l.out_channels; ++o)
    std::fill_n(out.channel(o), out.plane(), l.bias[static_cast<std::size_t>(o)]);

  if (kh == 1 && kw == 1) {
    const ConstRowMap in(x.data.data(), cin, static_cast<Eigen::Index>(x.plane()));
    RowMap o(out.data.data(), l.out_channels, static_cast<Eigen::Index>(out.plane()));
    o.noalias() += weights * in;
    return out;
  }

  const int rows_per_tile = std::max<int>(1, static_cast<int>(kTileFloats / (static_cast<std::size_t>(K) * W)));
  const std::size_t tiles = static_cast<std::size_t>((H + rows_per_tile - 1) / rows_per_tile);
  parallel_for(tiles, 1, [&](std::size_t t0, std::size_t t1) {
    RowMat col;
    RowMat res;
    for (std::size_t t = t0; t < t1; ++t) {
      const int y0 = static_cast<int>(t) * rows_per_tile;
      const int y1 = std::min(H, y0 + rows_per_tile);
      const int npos = (y1 - y0) * W;
      col.resize(K, npos);
      for (int c = 0; c < cin; ++c)
        for (int ky = 0; ky < kh; ++ky)
          for (int kx = 0; kx < kw; ++kx) {
            float* row = col.data() + static_cast<std::size_t>((c * kh + ky) * kw + kx) * npos;
            const int xs = std::max(0, pw - kx);
            const int xe = std::min(W, W + pw - kx);
            for (int y = y0; y < y1; ++y) {
              float* dst = row + static_cast<std::size_t>(y - y0) * W;
              const int sy = y + ky - ph;
              if (sy < 0 || sy >= H) {
                std::fill_n(dst, W, 0.0f);
                continue;
              }
              const float* src = x.channel(c) + static_cast<std::size_t>(sy) * W + (kx - pw);
              std::fill(dst, dst + xs, 0.0f);
              std::copy(src + xs, src + xe, dst + xs);
              std::fill(dst + xe, dst + W, 0.0f);
            }
          }
      if (tiles == 1) {
        RowMap o(out.data.data(), l.out_channels, npos);
        o.noalias() += weights * col;
        continue;
      }
      res.noalias() = weights * col;
      for (int o = 0; o < l.out_channels; ++o) {
        const float* r = res.data() + static_cast<std::size_t>(o) * npos;
        float* dst = out.channel(o) + static_cast<std::size_t>(y0) * W;
        for (int k = 0; k < npos; ++k) dst[k] += r[k];
      }
    }
  });
  return out;
}

Tensor avg_pool2(const Tensor& x) {
  if (x.height % 2 != 0 || x.width % 2 != 0)
    throw ShapeError("avg_pool2: odd spatial extent " + std::to_string(x.height) + "x" + std::to_string(x.width));
  Tensor out(x.channels, x.height / 2, x.width / 2);
  for (int c = 0; c < x.channels; ++c)
    for (int y = 0; y < out.height; ++y)
      for (int xx = 0; xx < out.width; ++xx)
        out(c, y, xx) = 0.25f * ((x(c, 2 * y, 2 * xx) + x(c, 2 * y, 2 * xx + 1)) +
                                 (x(c, 2 * y + 1, 2 * xx) + x(c, 2 * y + 1, 2 * xx + 1)));
  return out;
}

Tensor tconv2_up(const Tensor& x, const Layer& l) {
  check_layer(l, LayerKind::TransposedConv, "tconv2_up");
  if (l.kernel_h != 2 || l.kernel_w != 2) throw ShapeError("tconv2_up: kernel must be 2x2");
  if (x.channels != l.in_channels) throw ShapeError("tconv2_up: channel mismatch in " + l.name);

  const int H = x.height;
  const int W = x.width;
  const int cout = l.out_channels;
  const ConstRowMap weights(l.weight.data(), l.in_channels, cout * 4);
  const ConstRowMap in(x.data.data(), l.in_channels, static_cast<Eigen::Index>(x.plane()));
  const RowMat taps = weights.transpose() * in;  // (cout*4) x (H*W)

  Tensor out(cout, 2 * H, 2 * W);
  for (int o = 0; o < cout; ++o) {
    const float b = l.bias[static_cast<std::size_t>(o)];
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) {
        const float* t = taps.data() + static_cast<std::size_t>(o * 4 + dy * 2 + dx) * x.plane();
        for (int y = 0; y < H; ++y)
          for (int xx = 0; xx < W; ++xx) out(o, 2 * y + dy, 2 * xx + dx) = t[static_cast<std::size_t>(y) * W + xx] + b;
      }
  }
  return out;
}

void tanh_inplace(Tensor& x) {
  Eigen::Map<Eigen::ArrayXf> a(x.data.data(), static_cast<Eigen::Index>(x.data.size()));
  a = a.tanh();
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
  if (a.height != b.height || a.width != b.width) throw ShapeError("concat_channels: spatial mismatch");
  Tensor out(a.channels + b.channels, a.height, a.width);
  std::copy(a.data.begin(), a.data.end(), out.data.begin());
  std::copy(b.data.begin(), b.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(a.size()));
  return out;
}

}  // namespace viscid
