#include "corruptbench/calibration/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corruptbench/core/error.h"
#include "corruptbench/core/parallel.h"
#include "corruptbench/core/ssim.h"
#include "corruptbench/corruption/params_json.h"
#include "corruptbench/io/field_io.h"
#include "corruptbench/pipeline/synthetic.h"
#include "corruptbench/scene/scene_engine.h"

namespace cb {

SeverityKnob severity_knob(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::Brightness: return {kind, 1.0 / BrightnessParams{}.c};
        case CorruptionKind::Contrast: return {kind, 1.0 / (1.0 - ContrastParams{}.c)};
        case CorruptionKind::Saturate: return {kind, 1.0 / SaturateParams{}.beta};
        case CorruptionKind::DefocusBlur: return {kind, 5.0};
        case CorruptionKind::GaussianBlur: return {kind, 5.0};
        case CorruptionKind::GlassBlur: return {kind, 8.0};
        case CorruptionKind::MotionBlur: return {kind, 15.0};
        case CorruptionKind::ZoomBlur: return {kind, 8.0};
        case CorruptionKind::GaussianNoise: return {kind, 10.0};
        case CorruptionKind::ImpulseNoise: return {kind, 1.0 / ImpulseNoiseParams{}.p};
        case CorruptionKind::SpeckleNoise: return {kind, 10.0};
        case CorruptionKind::ShotNoise: return {kind, 40.0};
        case CorruptionKind::Pixelate: return {kind, 10.0};
        case CorruptionKind::Jpeg: return {kind, std::log(100.0) / std::log(100.0 / JpegParams{}.quality)};
        case CorruptionKind::Elastic: return {kind, 6.0};
        case CorruptionKind::Spatter: return {kind, 1.0 / SpatterParams{}.alpha};
        case CorruptionKind::Frost: return {kind, 1.0 / (1.0 - FrostParams{}.blend_weight)};
        case CorruptionKind::Snow: return {kind, 3.0};
        case CorruptionKind::Rain: return {kind, 2.0};
        case CorruptionKind::Fog: return {kind, 50.0};
    }
    throw ContractError("unknown corruption kind");
}

namespace {

WeatherParams scale_weather(WeatherParams p, double theta) {
    p.density *= theta;
    p.tint_strength = std::min(1.0, p.tint_strength * theta);
    return p;
}

}  // namespace

CorruptionParams knob_params(const CorruptionParams& base, double theta) {
    require(std::isfinite(theta) && theta >= 0.0, "severity theta must be finite and >= 0");
    const double t = theta;
    CorruptionParams out = std::visit(
        [t](const auto& b) -> CorruptionParams {
            using P = std::decay_t<decltype(b)>;
            P p = b;
            if constexpr (std::is_same_v<P, BrightnessParams>) {
                p.c = std::clamp(b.c * t, -1.0, 1.0);
            } else if constexpr (std::is_same_v<P, ContrastParams>) {
                p.c = std::max(0.0, 1.0 - (1.0 - b.c) * t);
            } else if constexpr (std::is_same_v<P, SaturateParams>) {
                p.alpha = 1.0 + (b.alpha - 1.0) * t;
                p.beta = std::clamp(b.beta * t, -1.0, 1.0);
            } else if constexpr (std::is_same_v<P, DefocusBlurParams>) {
                p.radius = b.radius * t;
            } else if constexpr (std::is_same_v<P, GaussianBlurParams>) {
                p.sigma = b.sigma * t;
            } else if constexpr (std::is_same_v<P, GlassBlurParams>) {
                p.sigma = b.sigma * t;
                p.radius = b.radius * t;
            } else if constexpr (std::is_same_v<P, MotionBlurParams>) {
                p.flow_gain = b.flow_gain * t;
            } else if constexpr (std::is_same_v<P, ZoomBlurParams>) {
                for (double& z : p.schedule) z = 1.0 + (z - 1.0) * t;
            } else if constexpr (std::is_same_v<P, GaussianNoiseParams> || std::is_same_v<P, SpeckleNoiseParams>) {
                p.alpha = b.alpha * t;
            } else if constexpr (std::is_same_v<P, ImpulseNoiseParams>) {
                p.p = std::min(1.0, b.p * t);
            } else if constexpr (std::is_same_v<P, ShotNoiseParams>) {
                p.c = t > 0.0 ? b.c / t : std::numeric_limits<double>::infinity();
            } else if constexpr (std::is_same_v<P, PixelateParams>) {
                p.fraction = 1.0 / (1.0 + (1.0 / b.fraction - 1.0) * t);
            } else if constexpr (std::is_same_v<P, JpegParams>) {
                p.quality = std::clamp(static_cast<int>(std::lround(100.0 * std::pow(b.quality / 100.0, t))), 1, 100);
            } else if constexpr (std::is_same_v<P, ElasticParams>) {
                p.alpha = b.alpha * t;
            } else if constexpr (std::is_same_v<P, SpatterParams>) {
                p.alpha = std::min(1.0, b.alpha * t);
            } else if constexpr (std::is_same_v<P, FrostParams>) {
                p.blend_weight = std::clamp(1.0 - (1.0 - b.blend_weight) * t, 0.0, 1.0);
            } else if constexpr (std::is_same_v<P, SnowParams>) {
                p = SnowParams(scale_weather(b, t));
            } else if constexpr (std::is_same_v<P, RainParams>) {
                p = RainParams(scale_weather(b, t));
            } else if constexpr (std::is_same_v<P, FogParams>) {
                p.visibility = t > 0.0 ? b.visibility / t : std::numeric_limits<double>::infinity();
            }
            return p;
        },
        base);
    validate_params(out);
    return out;
}

CorruptionParams knob_params(CorruptionKind kind, double theta) { return knob_params(default_params(kind), theta); }

CalibrationTarget CalibrationTarget::for_kind(CorruptionKind kind) {
    return is_noise(kind) ? CalibrationTarget{0.2, 0.02} : CalibrationTarget{0.7, 0.02};
}

double mean_ssim(CorruptionKind kind, const CorruptionParams& params, const std::vector<CalibrationSample>& samples,
                 const CameraRig& rig, std::uint64_t seed, int jobs) {
    require(!samples.empty(), "severity evaluation needs at least one sample frame");
    require(params_kind(params) == kind, "parameters do not belong to the requested kind");
    const CorruptionSpec spec(params, seed);
    std::vector<double> values(samples.size(), 0.0);
    parallel_for(samples.size(), jobs, [&](std::size_t i) {
        const CalibrationSample& s = samples[i];
        const SeedContext ctx = SeedContext::for_frame(seed, s.image.coord(), kind);
        scene::SceneInputs in;
        if (s.flow) in.flow = &*s.flow;
        if (s.depth) in.depth = &*s.depth;
        in.rig = &rig;
        const CorruptionResult r = scene::corrupt_frame(s.image, spec, ctx, in);
        values[i] = ssim(s.image, r.image);
    });
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

CalibrationResult calibrate(CorruptionKind kind, const std::vector<CalibrationSample>& samples, const CameraRig& rig,
                            const CalibrationTarget& target, const CalibrationOptions& options) {
    require(target.ssim > 0.0 && target.ssim < 1.0, "calibration target must be in (0, 1)");
    require(target.tolerance >= 0.0, "calibration tolerance must be >= 0");
    require(!samples.empty(), "calibration needs at least one sample frame");
    const CorruptionParams base = options.base ? *options.base : default_params(kind);
    require(params_kind(base) == kind, "base parameters do not belong to the requested kind");
    const double theta_max = options.theta_max.value_or(severity_knob(kind).theta_max);
    require(theta_max > 0.0, "theta_max must be > 0");

    auto eval = [&](double theta) {
        return mean_ssim(kind, knob_params(base, theta), samples, rig, options.seed, options.jobs);
    };
    CalibrationResult r{kind, 0.0, 1.0, 0, false, 0.0, theta_max, base};
    const double strongest = eval(theta_max);
    r.iterations = 1;
    if (strongest > target.ssim + target.tolerance) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "%s: target SSIM %.3f not reachable; SSIM ranges from 1.000 at theta=0 to %.4f at theta=%.4g",
                      std::string(kind_name(kind)).c_str(), target.ssim, strongest, theta_max);
        throw ContractError(buf);
    }
    if (std::abs(strongest - target.ssim) <= target.tolerance) {
        r.theta = theta_max;
        r.ssim = strongest;
        r.converged = true;
    }
    double lo = 0.0;
    double hi = theta_max;
    while (!r.converged && r.iterations < options.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        const double s = eval(mid);
        ++r.iterations;
        r.theta = mid;
        r.ssim = s;
        if (std::abs(s - target.ssim) <= target.tolerance) {
            r.converged = true;
        } else if (s > target.ssim) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    r.lo = lo;
    r.hi = hi;
    r.params = knob_params(base, r.theta);
    return r;
}

std::vector<SeverityRow> verify_severity(const std::vector<CorruptionSpec>& specs,
                                         const std::vector<CalibrationSample>& samples, const CameraRig& rig,
                                         int jobs) {
    std::vector<SeverityRow> rows;
    for (const CorruptionSpec& spec : specs) {
        rows.push_back({spec.kind(), mean_ssim(spec.kind(), spec.params(), samples, rig, spec.master_seed(), jobs),
                        reference_ssim(spec.kind()), samples.size()});
    }
    return rows;
}

std::vector<SeverityRow> verify_severity(
    const std::map<CorruptionKind, std::vector<std::pair<ImageFrame, ImageFrame>>>& pairs) {
    std::vector<SeverityRow> rows;
    for (const auto& [kind, list] : pairs) {
        require(!list.empty(), std::string(kind_name(kind)) + ": no clean/corrupt pairs");
        double sum = 0.0;
        for (const auto& [clean, corrupt] : list) {
            require(clean.same_shape(corrupt), std::string(kind_name(kind)) + ": clean/corrupt size mismatch");
            sum += ssim(clean, corrupt);
        }
        rows.push_back({kind, sum / static_cast<double>(list.size()), reference_ssim(kind), list.size()});
    }
    return rows;
}

void SeverityPreset::add(const CalibrationResult& r) {
    params.insert_or_assign(r.kind, r.params);
    provenance.insert_or_assign(r.kind, r);
}

nlohmann::json SeverityPreset::to_json() const {
    nlohmann::json presets = nlohmann::json::object();
    for (const auto& [kind, p] : params) {
        nlohmann::json entry{{"params", params_to_json(p)}};
        if (const auto it = provenance.find(kind); it != provenance.end()) {
            entry["theta"] = it->second.theta;
            entry["ssim"] = it->second.ssim;
            entry["iterations"] = it->second.iterations;
            entry["converged"] = it->second.converged;
        }
        presets[std::string(kind_name(kind))] = entry;
    }
    return {{"version", 1}, {"presets", presets}};
}

SeverityPreset SeverityPreset::from_json(const nlohmann::json& j) {
    SeverityPreset preset;
    if (!j.is_object() || !j.contains("presets") || !j.at("presets").is_object()) {
        throw ContractError("severity preset must be an object with a 'presets' object");
    }
    require(j.value("version", 1) == 1, "unsupported severity preset version");
    for (const auto& [name, entry] : j.at("presets").items()) {
        const CorruptionKind kind = kind_from_name(name);
        require(entry.is_object() && entry.contains("params"), name + ": preset entry needs 'params'");
        preset.params.insert_or_assign(kind, params_from_json(kind, entry.at("params")));
        if (entry.contains("theta")) {
            CalibrationResult r{kind, entry.at("theta").get<double>(), entry.value("ssim", 0.0),
                                entry.value("iterations", 0), entry.value("converged", false), 0.0, 0.0,
                                preset.params.at(kind)};
            preset.provenance.insert_or_assign(kind, r);
        }
    }
    return preset;
}

SeverityPreset SeverityPreset::load(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("cannot parse severity preset " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

void SeverityPreset::save(const std::filesystem::path& path) const {
    const std::string text = to_json().dump(2) + "\n";
    write_file_bytes(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

void SeverityPreset::merge_into(const std::filesystem::path& path) const {
    SeverityPreset merged = std::filesystem::exists(path) ? load(path) : SeverityPreset{};
    for (const auto& [kind, p] : params) merged.params.insert_or_assign(kind, p);
    for (const auto& [kind, r] : provenance) merged.provenance.insert_or_assign(kind, r);
    merged.save(path);
}

std::vector<CalibrationSample> synthetic_calibration_samples(int count, CameraRig* rig, int width, int height) {
    std::vector<CalibrationSample> out;
    for (SyntheticView& v : synthetic_corpus(count, width, height)) {
        out.push_back({std::move(v.image), std::move(v.flow), std::move(v.depth)});
    }
    if (rig) {
        SyntheticOptions opt;
        opt.width = width;
        opt.height = height;
        opt.focal_x = 166.0 * opt.width / 192.0;
        *rig = SyntheticWorld(opt).rig();
    }
    return out;
}

}  // namespace cb
