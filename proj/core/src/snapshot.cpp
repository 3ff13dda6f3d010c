#include "viscid/snapshot.hpp"

#include <cstdio>

#include "binary_io.hpp"

namespace viscid {

namespace {
constexpr char kMagic[8] = {'V', 'S', 'N', 'A', 'P', '1', '\0', '\0'};
}

std::vector<unsigned char> encode_snapshot(const ParticleSet& particles, std::uint32_t frame, double time) {
  const std::size_t n = particles.size();
  if (particles.velocity.size() != n || particles.color.size() != n)
    throw ShapeError("snapshot: particle arrays differ in length");
  detail::ByteWriter w;
  w.put_bytes(std::string_view(kMagic, sizeof kMagic));
  w.put<std::uint32_t>(kSnapshotVersion);
  w.put<std::uint32_t>(frame);
  w.put<std::uint64_t>(n);
  w.put<double>(time);
  for (const Vec2& x : particles.position) w.put<double>(x.x);
  for (const Vec2& x : particles.position) w.put<double>(x.y);
  for (const Vec2& v : particles.velocity) w.put<double>(v.x);
  for (const Vec2& v : particles.velocity) w.put<double>(v.y);
  w.put_array<std::uint8_t>(particles.color);
  return std::move(w.bytes());
}

Snapshot decode_snapshot(const std::vector<unsigned char>& bytes) {
  detail::ByteReader in(bytes, "snapshot");
  if (in.get_bytes(sizeof kMagic) != std::string(kMagic, sizeof kMagic)) throw FormatError("snapshot: bad magic");
  const auto version = in.get<std::uint32_t>();
  if (version != kSnapshotVersion) throw VersionError("snapshot: unsupported version " + std::to_string(version));
  Snapshot s;
  s.frame = in.get<std::uint32_t>();
  const auto n64 = in.get<std::uint64_t>();
  s.time = in.get<double>();
  if (n64 > in.remaining() / 33) throw TruncatedError("snapshot: particle count exceeds file size");
  const auto n = static_cast<std::size_t>(n64);
  std::vector<double> x(n), y(n), vx(n), vy(n);
  in.get_array<double>(x);
  in.get_array<double>(y);
  in.get_array<double>(vx);
  in.get_array<double>(vy);
  std::vector<std::uint8_t> color(n);
  in.get_array<std::uint8_t>(color);
  if (in.remaining() != 0) throw FormatError("snapshot: trailing bytes");
  for (std::size_t k = 0; k < n; ++k) s.particles.push_back({x[k], y[k]}, {vx[k], vy[k]}, color[k]);
  return s;
}

void write_snapshot(const std::string& path, const ParticleSet& particles, std::uint32_t frame, double time) {
  detail::write_file(path, encode_snapshot(particles, frame, time));
}

Snapshot read_snapshot(const std::string& path) { return decode_snapshot(detail::read_file(path)); }

std::string snapshot_filename(std::uint32_t frame) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06u.vsnap", frame);
  return buf;
}

}  // namespace viscid
