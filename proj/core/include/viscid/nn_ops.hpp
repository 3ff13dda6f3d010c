#pragma once

#include <string>
#include <vector>

#include "viscid/tensor.hpp"

namespace viscid {

enum class LayerKind { Conv, TransposedConv };

/// One learned layer. Conv weights are laid out (out, in, kh, kw);
/// transposed-conv weights (in, out, kh, kw), matching the usual framework
/// conventions so exported tensors can be copied verbatim.
struct Layer {
  std::string name;
  LayerKind kind = LayerKind::Conv;
  int in_channels = 0;
  int out_channels = 0;
  int kernel_h = 0;
  int kernel_w = 0;
  std::vector<float> weight;
  std::vector<float> bias;

  std::size_t weight_count() const noexcept {
    return static_cast<std::size_t>(in_channels) * out_channels * kernel_h * kernel_w;
  }

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Stride-1 cross-correlation with zero "same" padding (odd kernels).
Tensor conv2d(const Tensor& x, const Layer& layer);

/// 2x2 average pooling with stride 2. Height and width must be even.
Tensor avg_pool2(const Tensor& x);

/// Stride-2 transposed convolution with a 2x2 kernel: doubles H and W.
Tensor tconv2_up(const Tensor& x, const Layer& layer);

/// Elementwise tanh, in place.
void tanh_inplace(Tensor& x);

/// Channel concatenation [a, b]; spatial extents must agree.
Tensor concat_channels(const Tensor& a, const Tensor& b);

}  // namespace viscid
