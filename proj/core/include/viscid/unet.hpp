#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viscid/nn_ops.hpp"
#include "viscid/tensor.hpp"

namespace viscid {

/// Topology of the U-shaped network. widths[l] is the channel count of
/// encoder level l; widths[depth] is the bottleneck width.
struct UnetConfig {
  int in_channels = 6;
  int depth = 4;
  std::vector<int> widths{32, 64, 128, 256, 512};
  int kernel = 3;

  /// Default configuration for a pooling depth of 2 or 4: widths
  /// (32, 64, 128, 256, 512) at depth 4 and (16, 32, 64) at depth 2.
  static UnetConfig defaults(int depth, int in_channels = 6);

  friend bool operator==(const UnetConfig&, const UnetConfig&) = default;
};

/// Trained (or initialized) network parameters plus the topology they imply.
/// Layers appear in execution order:
///   enc{l}.conv0, enc{l}.conv1            l = 0 .. depth-1
///   mid.conv0, mid.conv1
///   dec{l}.up, dec{l}.conv0, dec{l}.conv1  l = depth-1 .. 0
///   out                                   1x1, 2 output channels, no activation
struct WeightManifest {
  static constexpr std::uint32_t kFormatVersion = 1;

  std::uint32_t format_version = kFormatVersion;
  UnetConfig config;
  std::uint64_t seed = 0;
  std::vector<Layer> layers;

  /// Throws ManifestError if the layers do not form the network described
  /// by `config`.
  void validate() const;

  friend bool operator==(const WeightManifest&, const WeightManifest&) = default;
};

/// Layer skeleton (names, kinds and shapes, empty tensors) for a config.
std::vector<Layer> unet_layout(const UnetConfig& config);

/// All weights and biases zero.
WeightManifest make_zero_manifest(const UnetConfig& config);

/// Weights and biases drawn uniformly from +-1/sqrt(fan_in), fan_in =
/// in_channels * kh * kw, using a 64-bit Mersenne Twister seeded with `seed`.
WeightManifest make_seeded_manifest(const UnetConfig& config, std::uint64_t seed);

/// Runs the network on a padded stack. Height and width must be multiples
/// of 2^depth and the channel count must match the manifest.
Tensor unet_forward(const Tensor& input, const WeightManifest& manifest);

/// Weight container: "VWNET1", u32 version, u32 header length, JSON header,
/// then each layer's weights followed by its biases as little-endian f32.
std::vector<unsigned char> serialize_manifest(const WeightManifest& manifest);
WeightManifest parse_manifest(const std::vector<unsigned char>& bytes);

void save_weights(const WeightManifest& manifest, const std::string& path);
WeightManifest load_weights(const std::string& path);

}  // namespace viscid
