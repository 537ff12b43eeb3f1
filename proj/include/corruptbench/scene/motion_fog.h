#pragma once

#include "corruptbench/core/field.h"
#include "corruptbench/core/image.h"
#include "corruptbench/corruption/params.h"

namespace cb::scene {

/// N = max(1, floor(sample_density * max |flow_gain * v|)) over the frame.
int motion_blur_samples(const PredictionField& flow, const MotionBlurParams& p);

/// Mean of I(x + k/N v) for k = 0..N, bilinear with reflect. Unclipped.
ImageFrame motion_blur(const ImageFrame& frame, const PredictionField& flow, const MotionBlurParams& p = {});

/// Koschmieder attenuation toward sky luminance. Invalid depth gives pure sky;
/// infinite visibility leaves the frame untouched. Unclipped.
ImageFrame fog(const ImageFrame& frame, const DepthMap& depth, const FogParams& p = {});

}  // namespace cb::scene
