#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "corruptbench/corruption/kind.h"

namespace cb {

using Rgb = std::array<double, 3>;

/// Î = I + c
struct BrightnessParams {
    double c = 0.39;
};

/// Î = (I - mean(I)) * c + mean(I), mean per channel
struct ContrastParams {
    double c = 0.16;
};

/// HSV saturation Ŝ = S * alpha + beta, then clipped to [0,1]
struct SaturateParams {
    double alpha = 2.3;
    double beta = 0.01;
};

/// Flat circular mean filter
struct DefocusBlurParams {
    double radius = 6.0;
};

struct GaussianBlurParams {
    double sigma = 4.0;
};

/// Gaussian blur followed by `iterations` sweeps of local pixel swaps within `radius`.
struct GlassBlurParams {
    double sigma = 1.2;
    int iterations = 1;
    double radius = 3.0;  ///< fractional radii interpolate between integer ones
};

/// Average along the flow vector with N = max(1, floor(sample_density * max|v|)).
/// `flow_gain` scales the flow before use (1 = flow as given).
struct MotionBlurParams {
    double sample_density = 10.0;
    double flow_gain = 1.0;
};

/// Mean of center zooms of the frame, one layer per factor; factor 1 is the frame itself.
struct ZoomBlurParams {
    std::vector<double> schedule = default_schedule();

    /// 1.00, 1.02, ..., 1.24 (13 layers).
    static std::vector<double> default_schedule();
};

/// Î = I + alpha * N(0,1)
struct GaussianNoiseParams {
    double alpha = 0.115;
};

/// Fraction `p` of pixels replaced by black or white with equal probability.
struct ImpulseNoiseParams {
    double p = 0.075;
};

/// Î = I + I * alpha * N(0,1)
struct SpeckleNoiseParams {
    double alpha = 0.45;
};

/// Î = Poisson(I * c) / c
struct ShotNoiseParams {
    double c = 23.0;
};

/// Box downsample to `fraction` of each side, bilinear upsample back.
struct PixelateParams {
    double fraction = 0.16;
};

/// Baseline JPEG round-trip at IJG quality 1..100 with 4:2:0 chroma.
struct JpegParams {
    int quality = 6;
};

/// Displacement = alpha * GaussianBlur_sigma(U(-1,1)) pixels per axis,
/// re-drawn every `keyframe_interval` frames and linearly blended in between.
struct ElasticParams {
    double alpha = 110.0;
    double sigma = 5.0;
    int keyframe_interval = 10;
};

/// Liquid layer from blurred Gaussian noise, thresholded and alpha-blended in `color`.
struct SpatterParams {
    double noise_sigma = 0.8;
    double blur_sigma = 3.0;
    double threshold = 0.65;
    Rgb color = {0.32, 0.26, 0.20};
    double alpha = 0.6;
};

/// Î = w * I + (1 - w) * T with a texture T cropped and scaled per (scene, camera).
/// An empty `texture_dir` selects the built-in procedural textures.
struct FrostParams {
    double blend_weight = 0.62;
    std::string texture_dir;
};

/// 3D particle weather. Distances in meters, times in seconds.
struct WeatherParams {
    double density = 0.0;          ///< particles per cubic meter
    double fall_speed = 0.0;       ///< m/s, downwards
    double speed_jitter = 0.2;     ///< relative fall-speed spread per particle
    std::array<double, 3> wind = {0.0, 0.0, 0.0};
    double exposure = 0.0;         ///< streak exposure; 0 renders point sprites
    double wobble_amplitude = 0.0; ///< lateral sway amplitude (snow)
    double wobble_frequency = 0.5; ///< Hz
    double particle_radius = 0.001;
    double opacity = 0.8;
    Rgb color = {0.9, 0.9, 0.9};
    double ambient_mix = 0.3;      ///< share of the frame's mean color in particle color
    Rgb tint = {0.8, 0.8, 0.8};
    double tint_strength = 0.0;    ///< g in Î = (1-g) Î + g tint
    double near = 1.0;             ///< slab start in front of the camera
    double slab_depth = 4.0;
    int substeps = 8;              ///< simulation steps per frame interval
    bool streaks = false;          ///< render substep polylines instead of sprites

    static WeatherParams rain_defaults();
    static WeatherParams snow_defaults();
};

struct SnowParams : WeatherParams {
    SnowParams() : WeatherParams(snow_defaults()) {}
    explicit SnowParams(const WeatherParams& p) : WeatherParams(p) {}
};

struct RainParams : WeatherParams {
    RainParams() : WeatherParams(rain_defaults()) {}
    explicit RainParams(const WeatherParams& p) : WeatherParams(p) {}
};

/// Koschmieder attenuation with visibility range d_m and sky luminance l.
struct FogParams {
    double visibility = 45.0;
    double sky = 0.8;
};

/// One alternative per kind, in CorruptionKind order.
using CorruptionParams =
    std::variant<BrightnessParams, ContrastParams, SaturateParams, DefocusBlurParams, GaussianBlurParams,
                 GlassBlurParams, MotionBlurParams, ZoomBlurParams, GaussianNoiseParams, ImpulseNoiseParams,
                 SpeckleNoiseParams, ShotNoiseParams, PixelateParams, JpegParams, ElasticParams, SpatterParams,
                 FrostParams, SnowParams, RainParams, FogParams>;

/// Default parameter set for `kind`.
CorruptionParams default_params(CorruptionKind kind);

/// Kind implied by the active alternative.
CorruptionKind params_kind(const CorruptionParams& params);

/// Throws ContractError when a value is outside its valid range.
void validate_params(const CorruptionParams& params);

}  // namespace cb
