#include "corruptbench/corruption/params_json.h"

#include <cmath>
#include <limits>
#include <string>

#include "corruptbench/core/error.h"

namespace cb {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BrightnessParams, c)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ContrastParams, c)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SaturateParams, alpha, beta)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DefocusBlurParams, radius)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GaussianBlurParams, sigma)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GlassBlurParams, sigma, iterations, radius)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(MotionBlurParams, sample_density, flow_gain)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ZoomBlurParams, schedule)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GaussianNoiseParams, alpha)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ImpulseNoiseParams, p)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SpeckleNoiseParams, alpha)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PixelateParams, fraction)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(JpegParams, quality)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ElasticParams, alpha, sigma, keyframe_interval)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SpatterParams, noise_sigma, blur_sigma, threshold, color, alpha)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FrostParams, blend_weight, texture_dir)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(WeatherParams, density, fall_speed, speed_jitter, wind, exposure,
                                                wobble_amplitude, wobble_frequency, particle_radius, opacity, color,
                                                ambient_mix, tint, tint_strength, near, slab_depth, substeps, streaks)

// Shot noise c may be +inf (no noise), which JSON cannot carry as a number.
void to_json(nlohmann::json& j, const ShotNoiseParams& p) {
    j = nlohmann::json{{"c", std::isinf(p.c) ? nlohmann::json("inf") : nlohmann::json(p.c)}};
}
void from_json(const nlohmann::json& j, ShotNoiseParams& p) {
    if (!j.contains("c")) return;
    const auto& c = j.at("c");
    p.c = c.is_string() && c.get<std::string>() == "inf" ? std::numeric_limits<double>::infinity() : c.get<double>();
}

// Fog visibility +inf means no fog.
void to_json(nlohmann::json& j, const FogParams& p) {
    j = nlohmann::json{{"visibility", std::isinf(p.visibility) ? nlohmann::json("inf") : nlohmann::json(p.visibility)},
                       {"sky", p.sky}};
}
void from_json(const nlohmann::json& j, FogParams& p) {
    if (j.contains("visibility")) {
        const auto& v = j.at("visibility");
        p.visibility = v.is_string() && v.get<std::string>() == "inf" ? std::numeric_limits<double>::infinity()
                                                                       : v.get<double>();
    }
    if (j.contains("sky")) p.sky = j.at("sky").get<double>();
}

void to_json(nlohmann::json& j, const SnowParams& p) { to_json(j, static_cast<const WeatherParams&>(p)); }
void from_json(const nlohmann::json& j, SnowParams& p) { from_json(j, static_cast<WeatherParams&>(p)); }
void to_json(nlohmann::json& j, const RainParams& p) { to_json(j, static_cast<const WeatherParams&>(p)); }
void from_json(const nlohmann::json& j, RainParams& p) { from_json(j, static_cast<WeatherParams&>(p)); }

nlohmann::json params_to_json(const CorruptionParams& params) {
    return std::visit([](const auto& p) { return nlohmann::json(p); }, params);
}

CorruptionParams params_from_json(CorruptionKind kind, const nlohmann::json& j) {
    const std::string name(kind_name(kind));
    if (!j.is_object()) throw ContractError(name + ": parameters must be a JSON object");
    CorruptionParams params = default_params(kind);
    const nlohmann::json known = params_to_json(params);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ContractError(name + ": unknown parameter '" + key + "'");
    }
    try {
        std::visit([&j](auto& p) { from_json(j, p); }, params);
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(name + ": bad parameter value: " + e.what());
    }
    validate_params(params);
    return params;
}

}  // namespace cb
