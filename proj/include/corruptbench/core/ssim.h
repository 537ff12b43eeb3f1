#pragma once

#include "corruptbench/core/image.h"

namespace cb {

/// Single-scale SSIM settings. Defaults are the canonical Wang et al. constants.
struct SsimOptions {
    int window_radius = 5;      ///< 11x11 window
    double window_sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// Mean SSIM over the luma of two equally sized frames.
///
/// Windows are Gaussian-weighted and only positions where the whole window fits
/// inside the image contribute. Frames narrower or shorter than the window fall
/// back to reflect-padded windows at every pixel.
double ssim(const ImageFrame& a, const ImageFrame& b, const SsimOptions& options = {});

/// Same measure on single-channel planes.
double ssim(const Plane& a, const Plane& b, const SsimOptions& options = {});

}  // namespace cb
