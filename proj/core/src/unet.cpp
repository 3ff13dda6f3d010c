#include "viscid/unet.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "binary_io.hpp"

namespace viscid {

namespace {

constexpr std::string_view kMagic = "VWNET1";

Layer conv(std::string name, int in, int out, int k) {
  Layer l;
  l.name = std::move(name);
  l.kind = LayerKind::Conv;
  l.in_channels = in;
  l.out_channels = out;
  l.kernel_h = k;
  l.kernel_w = k;
  return l;
}

Layer up(std::string name, int in, int out) {
  Layer l;
  l.name = std::move(name);
  l.kind = LayerKind::TransposedConv;
  l.in_channels = in;
  l.out_channels = out;
  l.kernel_h = 2;
  l.kernel_w = 2;
  return l;
}

void check_config(const UnetConfig& c) {
  if (c.depth != 2 && c.depth != 4) throw ManifestError("unet: pooling depth must be 2 or 4");
  if (static_cast<int>(c.widths.size()) != c.depth + 1) throw ManifestError("unet: need depth + 1 channel widths");
  for (int w : c.widths)
    if (w <= 0) throw ManifestError("unet: channel widths must be positive");
  if (c.in_channels <= 0) throw ManifestError("unet: in_channels must be positive");
  if (c.kernel <= 0 || c.kernel % 2 == 0) throw ManifestError("unet: kernel size must be odd");
}

}  // namespace

UnetConfig UnetConfig::defaults(int depth, int in_channels) {
  UnetConfig c;
  c.in_channels = in_channels;
  c.depth = depth;
  if (depth == 2)
    c.widths.assign({16, 32, 64});  // small grids, real-time budget
  else {
    c.widths.assign({32, 64, 128, 256, 512});
    c.widths.resize(static_cast<std::size_t>(depth) + 1);
  }
  check_config(c);
  return c;
}

std::vector<Layer> unet_layout(const UnetConfig& c) {
  check_config(c);
  const auto w = [&](int l) { return c.widths[static_cast<std::size_t>(l)]; };
  std::vector<Layer> layers;
  int in = c.in_channels;
  for (int l = 0; l < c.depth; ++l) {
    const std::string p = "enc" + std::to_string(l);
    layers.push_back(conv(p + ".conv0", in, w(l), c.kernel));
    layers.push_back(conv(p + ".conv1", w(l), w(l), c.kernel));
    in = w(l);
  }
  layers.push_back(conv("mid.conv0", in, w(c.depth), c.kernel));
  layers.push_back(conv("mid.conv1", w(c.depth), w(c.depth), c.kernel));
  for (int l = c.depth - 1; l >= 0; --l) {
    const std::string p = "dec" + std::to_string(l);
    layers.push_back(up(p + ".up", w(l + 1), w(l)));
    layers.push_back(conv(p + ".conv0", 2 * w(l), w(l), c.kernel));
    layers.push_back(conv(p + ".conv1", w(l), w(l), c.kernel));
  }
  layers.push_back(conv("out", w(0), 2, 1));
  return layers;
}

void WeightManifest::validate() const {
  if (format_version != kFormatVersion) throw VersionError("weight manifest: unsupported format version");
  const std::vector<Layer> expect = unet_layout(config);
  if (layers.size() != expect.size())
    throw ManifestError("weight manifest: expected " + std::to_string(expect.size()) + " layers, found " +
                        std::to_string(layers.size()));
  for (std::size_t k = 0; k < expect.size(); ++k) {
    const Layer& a = layers[k];
    const Layer& e = expect[k];
    if (a.name != e.name || a.kind != e.kind || a.in_channels != e.in_channels || a.out_channels != e.out_channels ||
        a.kernel_h != e.kernel_h || a.kernel_w != e.kernel_w)
      throw ManifestError("weight manifest: layer " + std::to_string(k) + " (" + a.name + ") breaks the shape chain; expected " + e.name);
    if (a.weight.size() != a.weight_count() || a.bias.size() != static_cast<std::size_t>(a.out_channels))
      throw ManifestError("weight manifest: tensor size mismatch in " + a.name);
  }
}

WeightManifest make_zero_manifest(const UnetConfig& config) {
  WeightManifest m;
  m.config = config;
  m.layers = unet_layout(config);
  for (Layer& l : m.layers) {
    l.weight.assign(l.weight_count(), 0.0f);
    l.bias.assign(static_cast<std::size_t>(l.out_channels), 0.0f);
  }
  return m;
}

WeightManifest make_seeded_manifest(const UnetConfig& config, std::uint64_t seed) {
  WeightManifest m = make_zero_manifest(config);
  m.seed = seed;
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0, 1) built directly from the engine output, which
  // is fully specified by the standard (unlike the distributions).
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (Layer& l : m.layers) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.in_channels * l.kernel_h * l.kernel_w));
    for (float& v : l.weight) v = static_cast<float>((2.0 * uniform() - 1.0) * bound);
    for (float& v : l.bias) v = static_cast<float>((2.0 * uniform() - 1.0) * bound);
  }
  return m;
}

Tensor unet_forward(const Tensor& input, const WeightManifest& m) {
  const UnetConfig& c = m.config;
  if (input.channels != c.in_channels)
    throw ManifestError("unet_forward: input has " + std::to_string(input.channels) + " channels, network expects " +
                        std::to_string(c.in_channels));
  const int mult = 1 << c.depth;
  if (input.height % mult != 0 || input.width % mult != 0)
    throw ShapeError("unet_forward: spatial extents must be multiples of " + std::to_string(mult));
  if (m.layers.size() != static_cast<std::size_t>(5 * c.depth + 3)) throw ManifestError("unet_forward: layer count mismatch");

  std::size_t next = 0;
  auto layer = [&]() -> const Layer& { return m.layers[next++]; };
  auto conv_tanh = [&](const Tensor& x) {
    Tensor y = conv2d(x, layer());
    tanh_inplace(y);
    return y;
  };

  std::vector<Tensor> skips;
  Tensor x = input;
  for (int l = 0; l < c.depth; ++l) {
    x = conv_tanh(x);
    x = conv_tanh(x);
    skips.push_back(x);
    x = avg_pool2(x);
  }
  x = conv_tanh(x);
  x = conv_tanh(x);
  for (int l = c.depth - 1; l >= 0; --l) {
    x = tconv2_up(x, layer());
    x = concat_channels(x, skips[static_cast<std::size_t>(l)]);
    x = conv_tanh(x);
    x = conv_tanh(x);
  }
  return conv2d(x, layer());
}

std::vector<unsigned char> serialize_manifest(const WeightManifest& m) {
  m.validate();
  detail::ByteWriter payload;
  for (const Layer& l : m.layers) {
    payload.put_array<float>(l.weight);
    payload.put_array<float>(l.bias);
  }

  nlohmann::json header;
  header["depth"] = m.config.depth;
  header["in_channels"] = m.config.in_channels;
  header["widths"] = m.config.widths;
  header["kernel"] = m.config.kernel;
  header["activation"] = "tanh";
  header["pool"] = "avg";
  header["seed"] = m.seed;
  header["payload_crc32"] = detail::crc32(payload.bytes());
  nlohmann::json layers = nlohmann::json::array();
  for (const Layer& l : m.layers) {
    const bool is_conv = l.kind == LayerKind::Conv;
    layers.push_back({{"name", l.name},
                      {"kind", is_conv ? "conv" : "tconv"},
                      {"shape", is_conv ? std::vector<int>{l.out_channels, l.in_channels, l.kernel_h, l.kernel_w}
                                        : std::vector<int>{l.in_channels, l.out_channels, l.kernel_h, l.kernel_w}}});
  }
  header["layers"] = std::move(layers);
  const std::string text = header.dump();

  detail::ByteWriter out;
  out.put_bytes(kMagic);
  out.put<std::uint32_t>(m.format_version);
  out.put<std::uint32_t>(static_cast<std::uint32_t>(text.size()));
  out.put_bytes(text);
  out.bytes().insert(out.bytes().end(), payload.bytes().begin(), payload.bytes().end());
  return std::move(out.bytes());
}

WeightManifest parse_manifest(const std::vector<unsigned char>& bytes) {
  detail::ByteReader in(bytes, "weight file");
  if (bytes.size() < kMagic.size() || in.get_bytes(kMagic.size()) != kMagic)
    throw FormatError("weight file: bad magic (expected VWNET1)");
  const auto version = in.get<std::uint32_t>();
  if (version != WeightManifest::kFormatVersion)
    throw VersionError("weight file: format version " + std::to_string(version) + " is not supported");
  const auto header_len = in.get<std::uint32_t>();
  const std::string text = in.get_bytes(header_len);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("weight file: malformed header: ") + e.what());
  }

  WeightManifest m;
  m.format_version = version;
  try {
    m.config.depth = header.at("depth").get<int>();
    m.config.in_channels = header.at("in_channels").get<int>();
    m.config.widths = header.at("widths").get<std::vector<int>>();
    m.config.kernel = header.value("kernel", 3);
    m.seed = header.value("seed", std::uint64_t{0});
    if (header.value("activation", std::string("tanh")) != "tanh" || header.value("pool", std::string("avg")) != "avg")
      throw ManifestError("weight file: only tanh activation with average pooling is supported");
    for (const auto& jl : header.at("layers")) {
      Layer l;
      l.name = jl.at("name").get<std::string>();
      const std::string kind = jl.at("kind").get<std::string>();
      const auto shape = jl.at("shape").get<std::vector<int>>();
      if (shape.size() != 4) throw ManifestError("weight file: layer " + l.name + " needs a 4-d shape");
      for (int s : shape)
        if (s <= 0) throw ManifestError("weight file: layer " + l.name + " has a non-positive extent");
      if (kind == "conv") {
        l.kind = LayerKind::Conv;
        l.out_channels = shape[0];
        l.in_channels = shape[1];
      } else if (kind == "tconv") {
        l.kind = LayerKind::TransposedConv;
        l.in_channels = shape[0];
        l.out_channels = shape[1];
      } else {
        throw ManifestError("weight file: unknown layer kind '" + kind + "'");
      }
      l.kernel_h = shape[2];
      l.kernel_w = shape[3];
      m.layers.push_back(std::move(l));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("weight file: incomplete header: ") + e.what());
  }

  const std::size_t payload_start = in.position();
  for (Layer& l : m.layers) {
    l.weight.resize(l.weight_count());
    l.bias.resize(static_cast<std::size_t>(l.out_channels));
    in.get_array<float>(l.weight);
    in.get_array<float>(l.bias);
  }
  if (in.remaining() != 0) throw FormatError("weight file: trailing bytes after the last tensor");
  if (header.contains("payload_crc32")) {
    const auto expect = header["payload_crc32"].get<std::uint32_t>();
    const auto got = detail::crc32(std::span(bytes).subspan(payload_start));
    if (expect != got) throw ChecksumError("weight file: payload checksum mismatch");
  }
  m.validate();
  return m;
}

void save_weights(const WeightManifest& manifest, const std::string& path) {
  detail::write_file(path, serialize_manifest(manifest));
}

WeightManifest load_weights(const std::string& path) { return parse_manifest(detail::read_file(path)); }

}  // namespace viscid
