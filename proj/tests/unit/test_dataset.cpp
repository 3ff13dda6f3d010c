#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <zlib.h>

#include "oracles.hpp"
#include "viscid/dataset.hpp"
#include "viscid/error.hpp"

using namespace viscid;

namespace {

FrameRecord random_record(int nx, int ny, int channels, std::mt19937_64& rng) {
  const GridDims d(nx, ny, 0.04);
  FrameRecord r;
  r.dims = d;
  r.dt = 1.0 / 300.0;
  r.rho = 1000.0;
  r.mu = Field2(nx, ny, 2.5);
  r.input = oracle::random_tensor(channels, d.sym_nx(), d.sym_ny(), rng);
  const MacVelocity2 label = oracle::random_velocity(d, rng, 0.01);
  r.label_du = label.u;
  r.label_dv = label.v;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("viscid_dataset_" + name)).string();
}

}  // namespace

TEST(FrameRecord, StreamRoundTripIsBitwise) {
  std::mt19937_64 rng(1);
  for (int c : {6, 7}) {
    const FrameRecord r = random_record(5, 4, c, rng);
    std::stringstream ss;
    const std::size_t n = write_frame(r, ss);
    EXPECT_EQ(n, ss.str().size());
    const std::optional<FrameRecord> back = read_frame(ss);
    ASSERT_TRUE(back.has_value());
    EXPECT_TRUE(*back == r);
    EXPECT_FALSE(read_frame(ss).has_value());
  }
}

TEST(FrameRecord, ValidationRejectsBadRecords) {
  std::mt19937_64 rng(2);
  FrameRecord r = random_record(4, 4, 6, rng);
  FrameRecord empty = r;
  empty.dims.nx = 0;
  std::stringstream ss;
  EXPECT_THROW(write_frame(empty, ss), InvalidArgument);
  FrameRecord channels = r;
  channels.input = Tensor(5, 9, 9);
  EXPECT_THROW(write_frame(channels, ss), ShapeError);
  FrameRecord nan = r;
  nan.label_du(0, 0) = std::nan("");
  EXPECT_THROW(write_frame(nan, ss), InvalidArgument);
  FrameRecord shape = r;
  shape.label_dv = Field2(4, 4);
  EXPECT_THROW(write_frame(shape, ss), ShapeError);
}

TEST(FrameRecord, DistinctReadErrors) {
  std::mt19937_64 rng(3);
  const FrameRecord r = random_record(4, 3, 6, rng);
  std::stringstream ss;
  write_frame(r, ss);
  const std::string bytes = ss.str();

  std::stringstream truncated(bytes.substr(0, bytes.size() - 7));
  EXPECT_THROW(read_frame(truncated), TruncatedError);
  std::stringstream header_cut(bytes.substr(0, 5));
  EXPECT_THROW(read_frame(header_cut), TruncatedError);

  std::string flipped = bytes;
  flipped[40] ^= 0x01;
  std::stringstream fs(flipped);
  EXPECT_THROW(read_frame(fs), ChecksumError);

  const std::vector<unsigned char> payload = encode_frame(r, 99);
  const std::uint32_t head[2] = {static_cast<std::uint32_t>(payload.size()),
                                 static_cast<std::uint32_t>(crc32(0L, payload.data(), static_cast<uInt>(payload.size())))};
  std::stringstream rebuilt;
  rebuilt.write(reinterpret_cast<const char*>(head), sizeof head);
  rebuilt.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  EXPECT_THROW(read_frame(rebuilt), VersionError);
}

TEST(Dataset, AppendThenScanRecoversSequence) {
  std::mt19937_64 rng(4);
  const std::string path = temp_path("seq.vfdata");
  std::vector<FrameRecord> written;
  {
    DatasetWriter w(path);
    for (int k = 0; k < 5; ++k) {
      written.push_back(random_record(3 + k, 4, k % 2 ? 7 : 6, rng));
      w.append(written.back());
    }
    EXPECT_EQ(w.frames(), 5u);
    w.close();
  }
  const std::vector<FrameRecord> back = read_dataset(path);
  ASSERT_EQ(back.size(), written.size());
  for (std::size_t k = 0; k < back.size(); ++k) EXPECT_TRUE(back[k] == written[k]);

  std::ifstream in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  EXPECT_EQ(std::string(magic, 7), "VFDATA1");
  std::filesystem::remove(path);
}

TEST(Dataset, HeaderErrors) {
  std::stringstream bad("XXDATA1\0\1\0\0\0");
  EXPECT_THROW(read_dataset_header(bad), FormatError);
  std::stringstream ok;
  write_dataset_header(ok);
  std::string bytes = ok.str();
  bytes[8] = 7;
  std::stringstream ver(bytes);
  EXPECT_THROW(read_dataset_header(ver), VersionError);
  std::stringstream cut(bytes.substr(0, 4));
  EXPECT_THROW(read_dataset_header(cut), TruncatedError);
  EXPECT_THROW(read_dataset(temp_path("missing.vfdata")), IoError);
}

TEST(DatasetManifest, RoundTripAndUnknownKeys) {
  DatasetManifest m;
  m.frame_count = 1500;
  m.scenes = {"fluid_drop", "paint_mixing"};
  m.nx = 50;
  m.ny = 50;
  m.mu_values = {0.5, 50.0};
  const std::string path = temp_path("manifest.txt");
  m.save(path);
  const DatasetManifest back = DatasetManifest::load(path);
  EXPECT_EQ(back.frame_count, 1500u);
  EXPECT_EQ(back.scenes, m.scenes);
  EXPECT_EQ(back.nx, 50);
  EXPECT_EQ(back.mu_values, m.mu_values);
  {
    std::ofstream out(path, std::ios::app);
    out << "colour=blue\n";
  }
  EXPECT_THROW(DatasetManifest::load(path), FormatError);
  std::filesystem::remove(path);
}
