#include "viscid/inference.hpp"

namespace viscid {

MacVelocity2 predict_delta(const ChannelStack& input, const WeightManifest& manifest, const GridDims& dims) {
  if (input.channels != manifest.config.in_channels)
    throw ShapeError("predict_delta: input has " + std::to_string(input.channels) + " channels, network expects " +
                     std::to_string(manifest.config.in_channels));
  const PaddingSpec spec = make_padding(input.height, input.width, manifest.config.depth, PadMode::Centered);
  const Tensor out = unet_forward(pad(input, spec), manifest);
  return decode(unpad(out, spec, input.height, input.width), dims);
}

FluidParams record_params(const FrameRecord& r) {
  FluidParams p;
  p.rho = r.rho;
  p.dt = r.dt;
  p.mu = r.mu;
  p.validate(r.dims);
  return p;
}

LossReport evaluate_prediction(const FrameRecord& record, const MacVelocity2& delta) {
  const GridDims& d = record.dims;
  require_shape(delta, d, "evaluate_prediction");
  VelocityGradients2 g = decode_gradients(record.input, d);
  const VelocityGradients2 gd = velocity_gradients(delta, d);
  auto add = [](Field2& a, const Field2& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a.data()[k] += b.data()[k];
  };
  add(g.du_dx, gd.du_dx);
  add(g.dv_dy, gd.dv_dy);
  add(g.du_dy, gd.du_dy);
  add(g.dv_dx, gd.dv_dx);
  LossReport r = variational_loss(delta, g, record_params(record), d);
  r.l2 = l2_error(delta, record.label());
  return r;
}

LossReport evaluate_record(const FrameRecord& record, const WeightManifest& manifest) {
  return evaluate_prediction(record, predict_delta(record.input, manifest, record.dims));
}

}  // namespace viscid
