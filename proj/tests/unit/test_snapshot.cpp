#include <gtest/gtest.h>

#include <filesystem>

#include "viscid/error.hpp"
#include "viscid/snapshot.hpp"

using namespace viscid;

namespace {

ParticleSet sample_particles() {
  ParticleSet p;
  p.push_back({0.1, 0.2}, {1.0, -1.0}, 0);
  p.push_back({0.3, 0.4}, {0.5, 0.25}, 3);
  p.push_back({1e-17, 7.0}, {-0.0, 123.456}, 255);
  return p;
}

}  // namespace

TEST(Snapshot, RoundTripIsBitwise) {
  const ParticleSet p = sample_particles();
  const Snapshot s = decode_snapshot(encode_snapshot(p, 42, 0.14));
  EXPECT_EQ(s.frame, 42u);
  EXPECT_EQ(s.time, 0.14);
  ASSERT_EQ(s.particles.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(s.particles.position[k].x, p.position[k].x);
    EXPECT_EQ(s.particles.position[k].y, p.position[k].y);
    EXPECT_EQ(s.particles.velocity[k].x, p.velocity[k].x);
    EXPECT_EQ(s.particles.velocity[k].y, p.velocity[k].y);
    EXPECT_EQ(s.particles.color[k], p.color[k]);
  }
}

TEST(Snapshot, LayoutSize) {
  const std::vector<unsigned char> b = encode_snapshot(sample_particles(), 1, 0.0);
  EXPECT_EQ(b.size(), 8u + 4 + 4 + 8 + 8 + 3 * (4 * 8 + 1));
  EXPECT_EQ(std::string(b.begin(), b.begin() + 6), "VSNAP1");
}

TEST(Snapshot, Errors) {
  std::vector<unsigned char> b = encode_snapshot(sample_particles(), 1, 0.0);
  std::vector<unsigned char> cut(b.begin(), b.end() - 1);
  EXPECT_THROW(decode_snapshot(cut), TruncatedError);
  std::vector<unsigned char> magic = b;
  magic[0] = 'Q';
  EXPECT_THROW(decode_snapshot(magic), FormatError);
  std::vector<unsigned char> ver = b;
  ver[8] = 2;
  EXPECT_THROW(decode_snapshot(ver), VersionError);
  std::vector<unsigned char> extra = b;
  extra.push_back(0);
  EXPECT_THROW(decode_snapshot(extra), FormatError);
}

TEST(Snapshot, FileRoundTripAndNaming) {
  EXPECT_EQ(snapshot_filename(42), "frame_000042.vsnap");
  const std::string path = (std::filesystem::temp_directory_path() / snapshot_filename(7)).string();
  write_snapshot(path, sample_particles(), 7, 0.5);
  const Snapshot s = read_snapshot(path);
  EXPECT_EQ(s.frame, 7u);
  EXPECT_EQ(s.particles.size(), 3u);
  std::filesystem::remove(path);
  EXPECT_THROW(read_snapshot(path), IoError);
}
