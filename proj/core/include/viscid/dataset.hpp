#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "viscid/grid.hpp"
#include "viscid/symgrid.hpp"

namespace viscid {

/// One training example: unpadded network input plus the viscosity-induced
/// velocity change on the raw MAC layout.
struct FrameRecord {
  GridDims dims;
  double dt = 0.0;
  double rho = 0.0;
  Field2 mu;              // (nx, ny), Pa s
  ChannelStack input;     // 6 or 7 channels, (2nx+1) x (2ny+1)
  Field2 label_du;        // (nx+1, ny)
  Field2 label_dv;        // (nx, ny+1)

  void validate() const;

  MacVelocity2 label() const {
    MacVelocity2 v;
    v.u = label_du;
    v.v = label_dv;
    return v;
  }

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

/// File layout (all little-endian):
///   "VFDATA1\0", u32 file version
///   repeated: u32 payload length, u32 CRC-32 of payload, payload
/// Payload: u32 record version, i32 nx, i32 ny, f64 dx, f64 dt, f64 rho,
/// u32 channels, f64 mu[nx*ny], f32 input[C*(2nx+1)*(2ny+1)],
/// f64 du[(nx+1)*ny], f64 dv[nx*(ny+1)]. Arrays are x-fastest for MAC
/// fields and channel/row-major for the input stack.
inline constexpr std::uint32_t kDatasetVersion = 1;

std::vector<unsigned char> encode_frame(const FrameRecord& record, std::uint32_t version = kDatasetVersion);

/// Appends one record to `sink`; returns the number of bytes written.
std::size_t write_frame(const FrameRecord& record, std::ostream& sink);

/// Reads the record at the current position. Returns nullopt at a clean end
/// of stream; throws TruncatedError, ChecksumError or VersionError otherwise.
std::optional<FrameRecord> read_frame(std::istream& source);

void write_dataset_header(std::ostream& sink);
/// Consumes and checks the file header.
void read_dataset_header(std::istream& source);

class DatasetWriter {
 public:
  explicit DatasetWriter(const std::string& path);
  std::size_t append(const FrameRecord& record);
  std::size_t frames() const noexcept { return frames_; }
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t frames_ = 0;
};

/// Reads every record of a dataset file in order.
std::vector<FrameRecord> read_dataset(const std::string& path);

/// Plain-text companion file, one key=value per line.
struct DatasetManifest {
  std::uint32_t format_version = kDatasetVersion;
  std::size_t frame_count = 0;
  std::vector<std::string> scenes;
  int nx = 0;
  int ny = 0;
  std::vector<double> mu_values;

  void save(const std::string& path) const;
  static DatasetManifest load(const std::string& path);
};

}  // namespace viscid
