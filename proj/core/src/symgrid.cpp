#include "viscid/symgrid.hpp"

#include <algorithm>

#include "viscid/level_set.hpp"

namespace viscid {

ChannelStack encode(const VelocityGradients2& g, const VolumeFractions2& vols, const SolidSdf2& solid,
                    const Field2* coeff, const GridDims& d) {
  require_shape(vols, d, "encode");
  require_shape(solid, d, "encode");
  if (g.du_dx.ni() != d.nx || g.du_dx.nj() != d.ny || g.du_dy.ni() != d.nx + 1 || g.du_dy.nj() != d.ny + 1)
    throw ShapeError("encode: gradients do not match grid");
  if (coeff && (coeff->ni() != d.nx || coeff->nj() != d.ny)) throw ShapeError("encode: coefficient field does not match grid");

  ChannelStack s(coeff ? kChannelsWithCoeff : kBaseChannels, d.sym_nx(), d.sym_ny());
  auto put = [&](int c, SymIndex p, double value) { s(c, p.a, p.b) = static_cast<float>(value); };

  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const SymIndex p = sym::cell(i, j);
      put(kDuDx, p, g.du_dx(i, j));
      put(kDvDy, p, g.dv_dy(i, j));
      put(kFluidVolume, p, vols.cell(i, j));
      if (coeff && vols.cell(i, j) > 0.0) put(kViscosityCoeff, p, (*coeff)(i, j));
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const SymIndex p = sym::node(i, j);
      put(kDuDy, p, g.du_dy(i, j));
      put(kDvDx, p, g.dv_dx(i, j));
      put(kFluidVolume, p, vols.node(i, j));
    }
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) put(kFluidVolume, sym::u_face(i, j), vols.u_face(i, j));
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) put(kFluidVolume, sym::v_face(i, j), vols.v_face(i, j));

  const Field2 ind = solid_indicator(solid);
  for (int b = 0; b < d.sym_ny(); ++b)
    for (int a = 0; a < d.sym_nx(); ++a) s(kSolidIndicator, a, b) = static_cast<float>(ind(a, b));
  return s;
}

ChannelStack encode(const MacVelocity2& vel, const VolumeFractions2& vols, const SolidSdf2& solid, const Field2* coeff,
                    const GridDims& dims) {
  return encode(velocity_gradients(vel, dims), vols, solid, coeff, dims);
}

MacVelocity2 decode(const Tensor& out, const GridDims& d) {
  if (out.channels != 2 || out.height != d.sym_nx() || out.width != d.sym_ny())
    throw ShapeError("decode: expected a 2 x (2nx+1) x (2ny+1) tensor");
  MacVelocity2 vel(d);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const SymIndex p = sym::u_face(i, j);
      vel.u(i, j) = out(0, p.a, p.b);
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const SymIndex p = sym::v_face(i, j);
      vel.v(i, j) = out(1, p.a, p.b);
    }
  return vel;
}

VelocityGradients2 decode_gradients(const ChannelStack& s, const GridDims& d) {
  if (s.channels < kBaseChannels || s.height != d.sym_nx() || s.width != d.sym_ny())
    throw ShapeError("decode_gradients: stack does not match grid");
  VelocityGradients2 g{Field2(d.nx, d.ny), Field2(d.nx, d.ny), Field2(d.nx + 1, d.ny + 1), Field2(d.nx + 1, d.ny + 1)};
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const SymIndex p = sym::cell(i, j);
      g.du_dx(i, j) = s(kDuDx, p.a, p.b);
      g.dv_dy(i, j) = s(kDvDy, p.a, p.b);
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const SymIndex p = sym::node(i, j);
      g.du_dy(i, j) = s(kDuDy, p.a, p.b);
      g.dv_dx(i, j) = s(kDvDx, p.a, p.b);
    }
  return g;
}

Tensor scatter_velocity(const MacVelocity2& vel, const GridDims& d) {
  require_shape(vel, d, "scatter_velocity");
  Tensor t(2, d.sym_nx(), d.sym_ny());
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const SymIndex p = sym::u_face(i, j);
      t(0, p.a, p.b) = static_cast<float>(vel.u(i, j));
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const SymIndex p = sym::v_face(i, j);
      t(1, p.a, p.b) = static_cast<float>(vel.v(i, j));
    }
  return t;
}

PaddingSpec make_padding(int height, int width, int depth, PadMode mode, std::mt19937_64* rng) {
  if (depth < 0 || depth > 16) throw InvalidArgument("make_padding: depth out of range");
  if (height <= 0 || width <= 0) throw InvalidArgument("make_padding: empty input");
  PaddingSpec s;
  s.multiple = 1 << depth;
  s.height = (height + s.multiple - 1) / s.multiple * s.multiple;
  s.width = (width + s.multiple - 1) / s.multiple * s.multiple;
  const int ph = s.height - height;
  const int pw = s.width - width;
  if (mode == PadMode::Centered) {
    s.top = ph / 2;
    s.left = pw / 2;
  } else {
    if (!rng) throw InvalidArgument("make_padding: random mode needs a generator");
    // Modulo on a 64-bit draw: bias is negligible for pads below 2^depth.
    s.top = static_cast<int>((*rng)() % static_cast<std::uint64_t>(ph + 1));
    s.left = static_cast<int>((*rng)() % static_cast<std::uint64_t>(pw + 1));
  }
  return s;
}

ChannelStack pad(const ChannelStack& stack, const PaddingSpec& spec) {
  if (spec.height < stack.height + spec.top || spec.width < stack.width + spec.left || spec.top < 0 || spec.left < 0)
    throw ShapeError("pad: padding spec does not contain the stack");
  if (spec.height % spec.multiple != 0 || spec.width % spec.multiple != 0)
    throw InvalidArgument("pad: padded extents are not multiples of 2^depth");
  ChannelStack out(stack.channels, spec.height, spec.width);
  if (stack.channels > kSolidIndicator) {
    float* s = out.channel(kSolidIndicator);
    std::fill(s, s + out.plane(), 1.0f);
  }
  for (int c = 0; c < stack.channels; ++c)
    for (int y = 0; y < stack.height; ++y)
      std::copy_n(stack.channel(c) + static_cast<std::size_t>(y) * stack.width, stack.width,
                  out.channel(c) + static_cast<std::size_t>(y + spec.top) * out.width + spec.left);
  return out;
}

Tensor unpad(const Tensor& padded, const PaddingSpec& spec, int height, int width) {
  if (padded.height != spec.height || padded.width != spec.width || spec.top + height > spec.height ||
      spec.left + width > spec.width)
    throw ShapeError("unpad: tensor does not match padding spec");
  Tensor out(padded.channels, height, width);
  for (int c = 0; c < padded.channels; ++c)
    for (int y = 0; y < height; ++y)
      std::copy_n(padded.channel(c) + static_cast<std::size_t>(y + spec.top) * padded.width + spec.left, width,
                  out.channel(c) + static_cast<std::size_t>(y) * width);
  return out;
}

namespace {

Tensor reverse_rows(const Tensor& t, std::initializer_list<int> negate) {
  Tensor out(t.channels, t.height, t.width);
  for (int c = 0; c < t.channels; ++c) {
    const bool flip = std::find(negate.begin(), negate.end(), c) != negate.end();
    for (int y = 0; y < t.height; ++y)
      for (int x = 0; x < t.width; ++x) {
        const float v = t(c, t.height - 1 - y, x);
        out(c, y, x) = flip ? -v : v;
      }
  }
  return out;
}

Tensor transpose_planes(const Tensor& t, std::initializer_list<std::pair<int, int>> swaps) {
  Tensor out(t.channels, t.width, t.height);
  for (int c = 0; c < t.channels; ++c) {
    int src = c;
    for (auto [p, q] : swaps) {
      if (c == p) src = q;
      else if (c == q) src = p;
    }
    if (src >= t.channels) src = c;
    for (int y = 0; y < t.height; ++y)
      for (int x = 0; x < t.width; ++x) out(c, x, y) = t(src, y, x);
  }
  return out;
}

}  // namespace

ChannelStack mirror_input_x(const ChannelStack& s) { return reverse_rows(s, {kDuDy, kDvDx}); }
Tensor mirror_output_x(const Tensor& t) { return reverse_rows(t, {0}); }
ChannelStack transpose_input(const ChannelStack& s) { return transpose_planes(s, {{kDuDx, kDvDy}, {kDuDy, kDvDx}}); }
Tensor transpose_output(const Tensor& t) { return transpose_planes(t, {{0, 1}}); }

Tensor naive_mac_stack(const MacVelocity2& vel, const GridDims& d) {
  require_shape(vel, d, "naive_mac_stack");
  Tensor t(2, d.nx + 1, d.ny + 1);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) t(0, i, j) = static_cast<float>(vel.u(i, j));
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) t(1, i, j) = static_cast<float>(vel.v(i, j));
  return t;
}

}  // namespace viscid
