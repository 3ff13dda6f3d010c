#pragma once

#include <optional>
#include <random>

#include "viscid/grid.hpp"
#include "viscid/tensor.hpp"

namespace viscid {

/// Symmetric-grid tensor: channels x (2nx+1) x (2ny+1). Height runs along x
/// (index a), width along y (index b); position (a, b) sits at (a dx/2, b dx/2).
using ChannelStack = Tensor;

/// Fixed channel order shared by the encoder, the dataset files and the network.
enum Channel : int {
  kDuDx = 0,
  kDvDy = 1,
  kDuDy = 2,
  kDvDx = 3,
  kFluidVolume = 4,
  kSolidIndicator = 5,
  kViscosityCoeff = 6,
};

inline constexpr int kBaseChannels = 6;
inline constexpr int kChannelsWithCoeff = 7;

/// Which raw MAC quantity a symmetric-grid position holds.
enum class SymFamily { Cell, Node, UFace, VFace };

struct SymIndex {
  int a;
  int b;
};

/// MAC index -> symmetric-grid position.
namespace sym {
constexpr SymIndex cell(int i, int j) { return {2 * i + 1, 2 * j + 1}; }
constexpr SymIndex node(int i, int j) { return {2 * i, 2 * j}; }
constexpr SymIndex u_face(int i, int j) { return {2 * i, 2 * j + 1}; }
constexpr SymIndex v_face(int i, int j) { return {2 * i + 1, 2 * j}; }

constexpr SymFamily family(int a, int b) {
  const bool oa = (a & 1) != 0;
  const bool ob = (b & 1) != 0;
  if (oa && ob) return SymFamily::Cell;
  if (!oa && !ob) return SymFamily::Node;
  if (!oa) return SymFamily::UFace;
  return SymFamily::VFace;
}
}  // namespace sym

/// Packs the network input. Derivative channels are written only at their
/// own family (normal derivatives at cells, cross derivatives at nodes);
/// every other position is exactly zero. The volume channel uses the cell,
/// face and node fractions at their respective positions. When `coeff` is
/// given a seventh channel carries mu at cells with positive liquid volume.
ChannelStack encode(const VelocityGradients2& grads, const VolumeFractions2& vols, const SolidSdf2& solid,
                    const Field2* coeff, const GridDims& dims);

ChannelStack encode(const MacVelocity2& vel, const VolumeFractions2& vols, const SolidSdf2& solid,
                    const Field2* coeff, const GridDims& dims);

/// Reads du at u-face positions of channel 0 and dv at v-face positions of
/// channel 1. Other positions are ignored.
MacVelocity2 decode(const Tensor& output, const GridDims& dims);

/// Reads the four derivative channels back at their own families.
VelocityGradients2 decode_gradients(const ChannelStack& stack, const GridDims& dims);

/// Inverse of decode: scatters a MAC field onto a 2-channel symmetric tensor.
Tensor scatter_velocity(const MacVelocity2& vel, const GridDims& dims);

enum class PadMode { Centered, Random };

struct PaddingSpec {
  int multiple = 1;  // 2^depth
  int top = 0;       // rows added before index a = 0
  int left = 0;      // columns added before index b = 0
  int height = 0;    // padded extents
  int width = 0;
};

/// Padding that rounds (height, width) up to a multiple of 2^depth. Centered
/// mode puts floor(pad/2) before the content; random mode draws the split
/// uniformly from [0, pad] and needs `rng`.
PaddingSpec make_padding(int height, int width, int depth, PadMode mode, std::mt19937_64* rng = nullptr);

/// Pads with zeros, except the solid indicator channel which is padded with 1.
ChannelStack pad(const ChannelStack& stack, const PaddingSpec& spec);

/// Crops a padded tensor back to (height, width).
Tensor unpad(const Tensor& padded, const PaddingSpec& spec, int height, int width);

/// x-mirror of an input stack: reverses a and flips the sign of the cross
/// derivatives.
ChannelStack mirror_input_x(const ChannelStack& stack);
/// x-mirror of a (du, dv) tensor: reverses a and flips du.
Tensor mirror_output_x(const Tensor& out);
/// x<->y swap of an input stack: transposes planes and swaps channels 0<->1, 2<->3.
ChannelStack transpose_input(const ChannelStack& stack);
/// x<->y swap of a (du, dv) tensor.
Tensor transpose_output(const Tensor& out);

/// Baseline layout without the symmetric grid: u and v arrays stacked after
/// zero-padding each to (nx+1) x (ny+1) at the high end.
Tensor naive_mac_stack(const MacVelocity2& vel, const GridDims& dims);

}  // namespace viscid
