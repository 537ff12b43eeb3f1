#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corruptbench/core/image.h"
#include "corruptbench/corruption/params.h"

// Individual image-space corruption operators. They are pure functions of their
// inputs and return UNCLIPPED frames; the engine clips once on exit.
namespace cb::ops {

ImageFrame brightness(const ImageFrame& frame, const BrightnessParams& p);
ImageFrame contrast(const ImageFrame& frame, const ContrastParams& p);
ImageFrame saturate(const ImageFrame& frame, const SaturateParams& p);

ImageFrame defocus_blur(const ImageFrame& frame, const DefocusBlurParams& p);
ImageFrame gaussian_blur(const ImageFrame& frame, const GaussianBlurParams& p);

/// Row-major sweeps; each pixel swaps with a partner at offset (round(u), round(v)),
/// u, v ~ U(-r - 1/2, r + 1/2), i.e. uniform over [-r, r]^2 for integer r.
/// Partners outside the frame leave the pixel in place.
void shuffle_pixels(ImageFrame& frame, int iterations, double radius, std::uint64_t seed);
ImageFrame glass_blur(const ImageFrame& frame, const GlassBlurParams& p, std::uint64_t seed);

/// Center zoom by `factor` >= 1 with bilinear sampling.
ImageFrame zoom_center(const ImageFrame& frame, double factor);
ImageFrame zoom_blur(const ImageFrame& frame, const ZoomBlurParams& p);

ImageFrame gaussian_noise(const ImageFrame& frame, const GaussianNoiseParams& p, std::uint64_t seed);
ImageFrame impulse_noise(const ImageFrame& frame, const ImpulseNoiseParams& p, std::uint64_t seed);
ImageFrame speckle_noise(const ImageFrame& frame, const SpeckleNoiseParams& p, std::uint64_t seed);
ImageFrame shot_noise(const ImageFrame& frame, const ShotNoiseParams& p, std::uint64_t seed);

ImageFrame pixelate(const ImageFrame& frame, const PixelateParams& p);

/// Baseline JPEG stream (IJG quality scale, 4:2:0, integer DCT) of the 8-bit quantized frame.
std::vector<std::uint8_t> jpeg_encode(const ImageFrame& frame, int quality);
ImageFrame jpeg_decode(const std::vector<std::uint8_t>& bytes);
ImageFrame jpeg(const ImageFrame& frame, const JpegParams& p);

/// Per-axis displacement planes (dx, dy) in pixels for `time_index`.
struct Displacement {
    Plane dx;
    Plane dy;
};
Displacement elastic_keyframe(int width, int height, const ElasticParams& p, std::uint64_t seed,
                              std::int64_t keyframe);
Displacement elastic_displacement(int width, int height, const ElasticParams& p, std::uint64_t seed,
                                  std::int64_t time_index);
ImageFrame warp(const ImageFrame& frame, const Displacement& d);
ImageFrame elastic(const ImageFrame& frame, const ElasticParams& p, std::uint64_t seed, std::int64_t time_index);

/// Per-pixel droplet opacity in [0, alpha].
Plane spatter_layer(int width, int height, const SpatterParams& p, std::uint64_t seed);
ImageFrame spatter(const ImageFrame& frame, const SpatterParams& p, std::uint64_t seed);

}  // namespace cb::ops
