#include "corruptbench/corruption/params.h"

#include <cmath>
#include <string>

#include "corruptbench/core/error.h"
#include "corruptbench/corruption/spec.h"

namespace cb {

std::vector<double> ZoomBlurParams::default_schedule() {
    std::vector<double> s;
    for (int i = 0; i <= 12; ++i) s.push_back(1.0 + 0.02 * i);
    return s;
}

WeatherParams WeatherParams::rain_defaults() {
    WeatherParams p;
    p.density = 9000.0;
    p.fall_speed = 9.0;
    p.speed_jitter = 0.15;
    p.wind = {0.4, 0.0, 0.0};
    p.exposure = 0.04;
    p.particle_radius = 0.0012;
    p.opacity = 0.55;
    p.color = {0.78, 0.80, 0.84};
    p.tint = {0.55, 0.58, 0.62};
    p.tint_strength = 0.12;
    p.near = 1.0;
    p.slab_depth = 4.0;
    p.streaks = true;
    return p;
}

WeatherParams WeatherParams::snow_defaults() {
    WeatherParams p;
    p.density = 80.0;
    p.fall_speed = 1.5;
    p.speed_jitter = 0.3;
    p.wind = {0.2, 0.0, 0.0};
    p.exposure = 0.0;
    p.wobble_amplitude = 0.1;
    p.wobble_frequency = 0.5;
    p.particle_radius = 0.006;
    p.opacity = 0.9;
    p.color = {0.96, 0.96, 0.98};
    p.tint = {0.85, 0.87, 0.90};
    p.tint_strength = 0.10;
    p.near = 1.0;
    p.slab_depth = 4.0;
    p.streaks = false;
    return p;
}

CorruptionParams default_params(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::Brightness: return BrightnessParams{};
        case CorruptionKind::Contrast: return ContrastParams{};
        case CorruptionKind::Saturate: return SaturateParams{};
        case CorruptionKind::DefocusBlur: return DefocusBlurParams{};
        case CorruptionKind::GaussianBlur: return GaussianBlurParams{};
        case CorruptionKind::GlassBlur: return GlassBlurParams{};
        case CorruptionKind::MotionBlur: return MotionBlurParams{};
        case CorruptionKind::ZoomBlur: return ZoomBlurParams{};
        case CorruptionKind::GaussianNoise: return GaussianNoiseParams{};
        case CorruptionKind::ImpulseNoise: return ImpulseNoiseParams{};
        case CorruptionKind::SpeckleNoise: return SpeckleNoiseParams{};
        case CorruptionKind::ShotNoise: return ShotNoiseParams{};
        case CorruptionKind::Pixelate: return PixelateParams{};
        case CorruptionKind::Jpeg: return JpegParams{};
        case CorruptionKind::Elastic: return ElasticParams{};
        case CorruptionKind::Spatter: return SpatterParams{};
        case CorruptionKind::Frost: return FrostParams{};
        case CorruptionKind::Snow: return SnowParams{};
        case CorruptionKind::Rain: return RainParams{};
        case CorruptionKind::Fog: return FogParams{};
    }
    throw ContractError("unknown corruption kind");
}

CorruptionKind params_kind(const CorruptionParams& params) {
    return static_cast<CorruptionKind>(params.index());
}

namespace {

void check(bool ok, CorruptionKind kind, const std::string& what) {
    if (!ok) throw ContractError(std::string(kind_name(kind)) + ": " + what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void validate_weather(const WeatherParams& p, CorruptionKind k) {
    check(finite_nonneg(p.density), k, "density must be >= 0");
    check(finite_nonneg(p.exposure), k, "exposure must be >= 0");
    check(finite_nonneg(p.fall_speed), k, "fall_speed must be >= 0");
    check(finite_nonneg(p.speed_jitter) && p.speed_jitter < 1.0, k, "speed_jitter must be in [0,1)");
    check(finite_nonneg(p.wobble_amplitude), k, "wobble_amplitude must be >= 0");
    check(p.particle_radius > 0.0, k, "particle_radius must be > 0");
    check(p.opacity >= 0.0 && p.opacity <= 1.0, k, "opacity must be in [0,1]");
    check(p.ambient_mix >= 0.0 && p.ambient_mix <= 1.0, k, "ambient_mix must be in [0,1]");
    check(p.tint_strength >= 0.0 && p.tint_strength <= 1.0, k, "tint_strength must be in [0,1]");
    check(p.near > 0.0 && p.slab_depth > 0.0, k, "spawn slab must have positive near and depth");
    check(p.substeps >= 2, k, "substeps must be >= 2");
}

}  // namespace

void validate_params(const CorruptionParams& params) {
    const CorruptionKind k = params_kind(params);
    std::visit(
        [k](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, BrightnessParams>) {
                check(std::isfinite(p.c) && std::abs(p.c) <= 1.0, k, "c must be in [-1,1]");
            } else if constexpr (std::is_same_v<P, ContrastParams>) {
                check(finite_nonneg(p.c), k, "c must be >= 0");
            } else if constexpr (std::is_same_v<P, SaturateParams>) {
                check(finite_nonneg(p.alpha), k, "alpha must be >= 0");
                check(std::isfinite(p.beta) && std::abs(p.beta) <= 1.0, k, "beta must be in [-1,1]");
            } else if constexpr (std::is_same_v<P, DefocusBlurParams>) {
                check(finite_nonneg(p.radius) && p.radius <= 256.0, k, "radius must be in [0,256]");
            } else if constexpr (std::is_same_v<P, GaussianBlurParams>) {
                check(finite_nonneg(p.sigma) && p.sigma <= 128.0, k, "sigma must be in [0,128]");
            } else if constexpr (std::is_same_v<P, GlassBlurParams>) {
                check(finite_nonneg(p.sigma) && p.sigma <= 128.0, k, "sigma must be in [0,128]");
                check(p.iterations >= 0 && p.iterations <= 64, k, "iterations must be in [0,64]");
                check(finite_nonneg(p.radius) && p.radius <= 64.0, k, "radius must be in [0,64]");
            } else if constexpr (std::is_same_v<P, MotionBlurParams>) {
                check(p.sample_density > 0.0 && std::isfinite(p.sample_density), k, "sample_density must be > 0");
                check(finite_nonneg(p.flow_gain), k, "flow_gain must be >= 0");
            } else if constexpr (std::is_same_v<P, ZoomBlurParams>) {
                check(!p.schedule.empty(), k, "zoom schedule must not be empty");
                for (double z : p.schedule) check(std::isfinite(z) && z >= 1.0, k, "zoom factors must be >= 1");
            } else if constexpr (std::is_same_v<P, GaussianNoiseParams> || std::is_same_v<P, SpeckleNoiseParams>) {
                check(finite_nonneg(p.alpha), k, "alpha must be >= 0");
            } else if constexpr (std::is_same_v<P, ImpulseNoiseParams>) {
                check(p.p >= 0.0 && p.p <= 1.0, k, "p must be in [0,1]");
            } else if constexpr (std::is_same_v<P, ShotNoiseParams>) {
                check(p.c > 0.0, k, "c must be > 0 (use +inf for no noise)");
            } else if constexpr (std::is_same_v<P, PixelateParams>) {
                check(p.fraction > 0.0 && p.fraction <= 1.0, k, "fraction must be in (0,1]");
            } else if constexpr (std::is_same_v<P, JpegParams>) {
                check(p.quality >= 1 && p.quality <= 100, k, "quality must be in [1,100]");
            } else if constexpr (std::is_same_v<P, ElasticParams>) {
                check(finite_nonneg(p.alpha), k, "alpha must be >= 0");
                check(p.sigma > 0.0 && p.sigma <= 128.0, k, "sigma must be in (0,128]");
                check(p.keyframe_interval >= 1, k, "keyframe_interval must be >= 1");
            } else if constexpr (std::is_same_v<P, SpatterParams>) {
                check(finite_nonneg(p.noise_sigma), k, "noise_sigma must be >= 0");
                check(finite_nonneg(p.blur_sigma), k, "blur_sigma must be >= 0");
                check(std::isfinite(p.threshold), k, "threshold must be finite");
                check(p.alpha >= 0.0 && p.alpha <= 1.0, k, "alpha must be in [0,1]");
                for (double c : p.color) check(c >= 0.0 && c <= 1.0, k, "color must be in [0,1]");
            } else if constexpr (std::is_same_v<P, FrostParams>) {
                check(p.blend_weight >= 0.0 && p.blend_weight <= 1.0, k, "blend_weight must be in [0,1]");
            } else if constexpr (std::is_same_v<P, SnowParams> || std::is_same_v<P, RainParams>) {
                validate_weather(p, k);
            } else if constexpr (std::is_same_v<P, FogParams>) {
                check(p.visibility > 0.0, k, "visibility d_m must be > 0 (use +inf for no fog)");
                check(p.sky >= 0.0 && p.sky <= 1.0, k, "sky luminance must be in [0,1]");
            }
        },
        params);
}

CorruptionSpec::CorruptionSpec(CorruptionKind kind, std::uint64_t master_seed)
    : CorruptionSpec(default_params(kind), master_seed) {}

CorruptionSpec::CorruptionSpec(CorruptionParams params, std::uint64_t master_seed)
    : kind_(params_kind(params)),
      params_(std::move(params)),
      consistency_(table_consistency(kind_)),
      master_seed_(master_seed) {
    validate_params(params_);
}

CorruptionSpec CorruptionSpec::override_consistency(CorruptionParams params, Consistency consistency,
                                                    std::uint64_t master_seed) {
    CorruptionSpec spec(std::move(params), master_seed);
    spec.consistency_ = consistency;
    spec.overridden_ = true;
    return spec;
}

}  // namespace cb
