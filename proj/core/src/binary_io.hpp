#pragma once

// Little-endian encoding helpers shared by the weight, dataset and snapshot
// containers.

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "viscid/error.hpp"

namespace viscid::detail {

template <class T>
T byteswap_if_big(T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  if constexpr (std::endian::native == std::endian::little || sizeof(T) == 1) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

class ByteWriter {
 public:
  template <class T>
  void put(T v) {
    v = byteswap_if_big(v);
    const auto* p = reinterpret_cast<const unsigned char*>(&v);
    buf_.insert(buf_.end(), p, p + sizeof(T));
  }

  template <class T>
  void put_array(std::span<const T> values) {
    if constexpr (std::endian::native == std::endian::little) {
      const auto* p = reinterpret_cast<const unsigned char*>(values.data());
      buf_.insert(buf_.end(), p, p + values.size_bytes());
    } else {
      for (T v : values) put(v);
    }
  }

  void put_bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }

  std::vector<unsigned char>& bytes() noexcept { return buf_; }

 private:
  std::vector<unsigned char> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const unsigned char> data, const char* context) : data_(data), context_(context) {}

  template <class T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return byteswap_if_big(v);
  }

  template <class T>
  void get_array(std::span<T> out) {
    need(out.size_bytes());
    std::memcpy(out.data(), data_.data() + pos_, out.size_bytes());
    pos_ += out.size_bytes();
    if constexpr (std::endian::native != std::endian::little)
      for (T& v : out) v = byteswap_if_big(v);
  }

  std::string get_bytes(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw TruncatedError(std::string(context_) + ": unexpected end of data");
  }

  std::span<const unsigned char> data_;
  std::size_t pos_ = 0;
  const char* context_;
};

std::uint32_t crc32(std::span<const unsigned char> bytes);

std::vector<unsigned char> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const unsigned char> bytes);

}  // namespace viscid::detail
