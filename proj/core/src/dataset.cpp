#include "viscid/dataset.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "binary_io.hpp"

namespace viscid {

namespace {

constexpr char kFileMagic[8] = {'V', 'F', 'D', 'A', 'T', 'A', '1', '\0'};

}  // namespace

void FrameRecord::validate() const {
  if (dims.nx < 1 || dims.ny < 1) throw InvalidArgument("FrameRecord: zero-size grid");
  if (!(dims.dx > 0.0)) throw InvalidArgument("FrameRecord: dx must be positive");
  if (!(dt > 0.0) || !(rho > 0.0)) throw InvalidArgument("FrameRecord: dt and rho must be positive");
  if (mu.ni() != dims.nx || mu.nj() != dims.ny) throw ShapeError("FrameRecord: mu field does not match grid");
  if (input.channels != kBaseChannels && input.channels != kChannelsWithCoeff)
    throw ShapeError("FrameRecord: input must have 6 or 7 channels");
  if (input.height != dims.sym_nx() || input.width != dims.sym_ny())
    throw ShapeError("FrameRecord: input is not on the symmetric grid");
  if (label_du.ni() != dims.nx + 1 || label_du.nj() != dims.ny || label_dv.ni() != dims.nx ||
      label_dv.nj() != dims.ny + 1)
    throw ShapeError("FrameRecord: label shape mismatch");
  for (double v : label_du.data())
    if (!std::isfinite(v)) throw InvalidArgument("FrameRecord: non-finite label");
  for (double v : label_dv.data())
    if (!std::isfinite(v)) throw InvalidArgument("FrameRecord: non-finite label");
}

std::vector<unsigned char> encode_frame(const FrameRecord& r, std::uint32_t version) {
  r.validate();
  detail::ByteWriter w;
  w.put<std::uint32_t>(version);
  w.put<std::int32_t>(r.dims.nx);
  w.put<std::int32_t>(r.dims.ny);
  w.put<double>(r.dims.dx);
  w.put<double>(r.dt);
  w.put<double>(r.rho);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(r.input.channels));
  w.put_array<double>(r.mu.data());
  w.put_array<float>(r.input.data);
  w.put_array<double>(r.label_du.data());
  w.put_array<double>(r.label_dv.data());
  return std::move(w.bytes());
}

std::size_t write_frame(const FrameRecord& record, std::ostream& sink) {
  const std::vector<unsigned char> payload = encode_frame(record);
  detail::ByteWriter head;
  head.put<std::uint32_t>(static_cast<std::uint32_t>(payload.size()));
  head.put<std::uint32_t>(detail::crc32(payload));
  sink.write(reinterpret_cast<const char*>(head.bytes().data()), static_cast<std::streamsize>(head.bytes().size()));
  sink.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (!sink) throw IoError("write_frame: sink write failure");
  return head.bytes().size() + payload.size();
}

std::optional<FrameRecord> read_frame(std::istream& source) {
  unsigned char head_bytes[8];
  source.read(reinterpret_cast<char*>(head_bytes), sizeof head_bytes);
  const auto got = static_cast<std::size_t>(source.gcount());
  if (got == 0 && source.eof()) return std::nullopt;
  if (got != sizeof head_bytes) throw TruncatedError("read_frame: truncated record header");

  detail::ByteReader head(head_bytes, "record header");
  const auto length = head.get<std::uint32_t>();
  const auto crc = head.get<std::uint32_t>();
  std::vector<unsigned char> payload(length);
  source.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(length));
  if (static_cast<std::size_t>(source.gcount()) != length) throw TruncatedError("read_frame: truncated record payload");
  if (detail::crc32(payload) != crc) throw ChecksumError("read_frame: record checksum mismatch");

  detail::ByteReader in(payload, "record payload");
  const auto version = in.get<std::uint32_t>();
  if (version != kDatasetVersion)
    throw VersionError("read_frame: record version " + std::to_string(version) + " is not supported");

  FrameRecord r;
  const int nx = in.get<std::int32_t>();
  const int ny = in.get<std::int32_t>();
  const double dx = in.get<double>();
  if (nx < 1 || ny < 1 || nx > (1 << 16) || ny > (1 << 16)) throw FormatError("read_frame: implausible grid size");
  r.dims.nx = nx;
  r.dims.ny = ny;
  r.dims.dx = dx;
  r.dt = in.get<double>();
  r.rho = in.get<double>();
  const auto channels = static_cast<int>(in.get<std::uint32_t>());
  if (channels != kBaseChannels && channels != kChannelsWithCoeff) throw FormatError("read_frame: bad channel count");
  r.mu = Field2(nx, ny);
  r.input = ChannelStack(channels, r.dims.sym_nx(), r.dims.sym_ny());
  r.label_du = Field2(nx + 1, ny);
  r.label_dv = Field2(nx, ny + 1);
  in.get_array<double>(r.mu.data());
  in.get_array<float>(r.input.data);
  in.get_array<double>(r.label_du.data());
  in.get_array<double>(r.label_dv.data());
  if (in.remaining() != 0) throw FormatError("read_frame: payload length does not match its contents");
  r.validate();
  return r;
}

void write_dataset_header(std::ostream& sink) {
  detail::ByteWriter w;
  w.put_bytes(std::string_view(kFileMagic, sizeof kFileMagic));
  w.put<std::uint32_t>(kDatasetVersion);
  sink.write(reinterpret_cast<const char*>(w.bytes().data()), static_cast<std::streamsize>(w.bytes().size()));
  if (!sink) throw IoError("write_dataset_header: sink write failure");
}

void read_dataset_header(std::istream& source) {
  unsigned char bytes[12];
  source.read(reinterpret_cast<char*>(bytes), sizeof bytes);
  if (source.gcount() != static_cast<std::streamsize>(sizeof bytes)) throw TruncatedError("dataset: truncated file header");
  if (!std::equal(kFileMagic, kFileMagic + sizeof kFileMagic, reinterpret_cast<const char*>(bytes)))
    throw FormatError("dataset: bad magic (expected VFDATA1)");
  detail::ByteReader in(std::span<const unsigned char>(bytes + 8, 4), "dataset header");
  const auto version = in.get<std::uint32_t>();
  if (version != kDatasetVersion) throw VersionError("dataset: file version " + std::to_string(version) + " is not supported");
}

DatasetWriter::DatasetWriter(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw IoError("cannot create dataset " + path);
  write_dataset_header(out_);
}

std::size_t DatasetWriter::append(const FrameRecord& record) {
  const std::size_t n = write_frame(record, out_);
  out_.flush();
  ++frames_;
  return n;
}

void DatasetWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("failed to close dataset " + path_);
}

std::vector<FrameRecord> read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset " + path);
  read_dataset_header(in);
  std::vector<FrameRecord> frames;
  while (auto r = read_frame(in)) frames.push_back(std::move(*r));
  return frames;
}

void DatasetManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot create manifest " + path);
  out.precision(17);
  out << "format_version=" << format_version << '\n';
  out << "frame_count=" << frame_count << '\n';
  out << "nx=" << nx << '\n';
  out << "ny=" << ny << '\n';
  for (const std::string& s : scenes) out << "scene=" << s << '\n';
  out << "mu=";
  for (std::size_t k = 0; k < mu_values.size(); ++k) out << (k ? "," : "") << mu_values[k];
  out << '\n';
  if (!out) throw IoError("write failure on " + path);
}

DatasetManifest DatasetManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path);
  DatasetManifest m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("manifest: malformed line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "format_version") m.format_version = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "frame_count") m.frame_count = std::stoull(value);
      else if (key == "nx") m.nx = std::stoi(value);
      else if (key == "ny") m.ny = std::stoi(value);
      else if (key == "scene") m.scenes.push_back(value);
      else if (key == "mu") {
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!item.empty()) m.mu_values.push_back(std::stod(item));
      } else {
        throw FormatError("manifest: unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw FormatError("manifest: bad value for '" + key + "'");
    }
  }
  if (m.format_version != kDatasetVersion) throw VersionError("manifest: unsupported format version");
  return m;
}

}  // namespace viscid
