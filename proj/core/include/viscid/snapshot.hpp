#pragma once

#include <cstdint>
#include <string>

#include "viscid/apic.hpp"

namespace viscid {

/// Particle snapshot file (little-endian):
///   "VSNAP1\0\0", u32 version, u32 frame, u64 count, f64 time,
///   f64 x[count], f64 y[count], f64 vx[count], f64 vy[count], u8 color[count]
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  std::uint32_t frame = 0;
  double time = 0.0;
  ParticleSet particles;  // affine matrices are not stored
};

std::vector<unsigned char> encode_snapshot(const ParticleSet& particles, std::uint32_t frame, double time);
Snapshot decode_snapshot(const std::vector<unsigned char>& bytes);

void write_snapshot(const std::string& path, const ParticleSet& particles, std::uint32_t frame, double time);
Snapshot read_snapshot(const std::string& path);

/// Name used for frame `frame` inside a snapshot directory: frame_000042.vsnap
std::string snapshot_filename(std::uint32_t frame);

}  // namespace viscid
