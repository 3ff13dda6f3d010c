#pragma once

#include "viscid/dataset.hpp"
#include "viscid/fluid_params.hpp"
#include "viscid/losses.hpp"
#include "viscid/symgrid.hpp"
#include "viscid/unet.hpp"

namespace viscid {

/// Network prediction of the viscous velocity change for an unpadded input
/// stack: centered padding, forward pass, crop, decode.
MacVelocity2 predict_delta(const ChannelStack& input, const WeightManifest& manifest, const GridDims& dims);

/// Parameters stored with a dataset record.
FluidParams record_params(const FrameRecord& record);

/// L2 against the record's label and L_v of the predicted update. The new
/// velocity gradients are the stored old-velocity channels plus the
/// gradients of the prediction.
LossReport evaluate_prediction(const FrameRecord& record, const MacVelocity2& predicted_delta);

LossReport evaluate_record(const FrameRecord& record, const WeightManifest& manifest);

}  // namespace viscid
