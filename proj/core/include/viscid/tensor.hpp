#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "viscid/error.hpp"

namespace viscid {

/// Dense float32 tensor of shape (channels, height, width), row-major.
struct Tensor {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> data;

  Tensor() = default;
  Tensor(int c, int h, int w, float value = 0.0f)
      : channels(c), height(h), width(w), data(static_cast<std::size_t>(c) * h * w, value) {
    if (c < 0 || h < 0 || w < 0) throw ShapeError("Tensor: negative extent");
  }

  std::size_t plane() const noexcept { return static_cast<std::size_t>(height) * static_cast<std::size_t>(width); }
  std::size_t size() const noexcept { return data.size(); }

  float& operator()(int c, int y, int x) {
    assert(c >= 0 && c < channels && y >= 0 && y < height && x >= 0 && x < width);
    return data[static_cast<std::size_t>(c) * plane() + static_cast<std::size_t>(y) * width + x];
  }
  float operator()(int c, int y, int x) const {
    assert(c >= 0 && c < channels && y >= 0 && y < height && x >= 0 && x < width);
    return data[static_cast<std::size_t>(c) * plane() + static_cast<std::size_t>(y) * width + x];
  }

  float* channel(int c) noexcept { return data.data() + static_cast<std::size_t>(c) * plane(); }
  const float* channel(int c) const noexcept { return data.data() + static_cast<std::size_t>(c) * plane(); }

  bool same_shape(const Tensor& o) const noexcept {
    return channels == o.channels && height == o.height && width == o.width;
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

}  // namespace viscid
