#include "corruptbench/corruption/engine.h"

#include <string>

#include "corruptbench/core/error.h"
#include "corruptbench/corruption/frost.h"
#include "corruptbench/corruption/operators.h"
#include "corruptbench/corruption/params_json.h"

namespace cb {

nlohmann::json Provenance::to_json() const {
    return {
        {"kind", kind_name(kind)},
        {"scene", coord.scene_id},
        {"time_index", coord.time_index},
        {"camera", camera_name(coord.camera)},
        {"master_seed", master_seed},
        {"stream_seed", stream_seed},
        {"consistency", {{"time", consistency.time}, {"stereo", consistency.stereo}, {"depth", consistency.depth}}},
        {"consistency_overridden", consistency_overridden},
        {"realized", realized},
        {"frame_detail", frame_detail},
    };
}

Provenance Provenance::from_json(const nlohmann::json& j) {
    try {
        Provenance p;
        p.kind = kind_from_name(j.at("kind").get<std::string>());
        p.coord.scene_id = j.at("scene").get<std::string>();
        p.coord.time_index = j.at("time_index").get<std::int64_t>();
        p.coord.camera = camera_from_name(j.at("camera").get<std::string>());
        p.master_seed = j.at("master_seed").get<std::uint64_t>();
        p.stream_seed = j.at("stream_seed").get<std::uint64_t>();
        const auto& c = j.at("consistency");
        p.consistency = {c.at("time").get<bool>(), c.at("stereo").get<bool>(), c.at("depth").get<bool>()};
        p.consistency_overridden = j.value("consistency_overridden", false);
        p.realized = j.at("realized");
        p.frame_detail = j.value("frame_detail", nlohmann::json::object());
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("malformed provenance record: ") + e.what());
    }
}

void check_context(const CorruptionSpec& spec, const SeedContext& ctx) {
    if (ctx.kind != spec.kind()) {
        throw ContractError("seed context is for '" + std::string(kind_name(ctx.kind)) + "' but spec is '" +
                            std::string(kind_name(spec.kind())) + "'");
    }
}

Provenance make_provenance(const CorruptionSpec& spec, const SeedContext& ctx) {
    check_context(spec, ctx);
    Provenance p;
    p.kind = spec.kind();
    p.coord = {ctx.scene_id, ctx.time_index, ctx.camera};
    p.master_seed = ctx.master_seed;
    p.stream_seed = derive_stream_seed(ctx, spec.consistency());
    p.consistency = spec.consistency();
    p.consistency_overridden = spec.consistency_overridden();
    p.realized = {{"params", params_to_json(spec.params())}};
    return p;
}

CorruptionResult apply_unclipped(const ImageFrame& frame, const CorruptionSpec& spec, const SeedContext& ctx) {
    require(!frame.empty(), "cannot corrupt an empty frame");
    if (needs_scene_inputs(spec.kind())) {
        throw ContractError("'" + std::string(kind_name(spec.kind())) +
                            "' needs flow or depth inputs; use the scene-aware entry point");
    }
    Provenance prov = make_provenance(spec, ctx);
    const std::uint64_t seed = prov.stream_seed;
    ImageFrame out = std::visit(
        [&](const auto& p) -> ImageFrame {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, BrightnessParams>) return ops::brightness(frame, p);
            else if constexpr (std::is_same_v<P, ContrastParams>) return ops::contrast(frame, p);
            else if constexpr (std::is_same_v<P, SaturateParams>) return ops::saturate(frame, p);
            else if constexpr (std::is_same_v<P, DefocusBlurParams>) return ops::defocus_blur(frame, p);
            else if constexpr (std::is_same_v<P, GaussianBlurParams>) return ops::gaussian_blur(frame, p);
            else if constexpr (std::is_same_v<P, GlassBlurParams>) {
                prov.realized["pattern_seed"] = seed;
                return ops::glass_blur(frame, p, seed);
            } else if constexpr (std::is_same_v<P, ZoomBlurParams>) return ops::zoom_blur(frame, p);
            else if constexpr (std::is_same_v<P, GaussianNoiseParams>) {
                prov.realized["pattern_seed"] = seed;
                return ops::gaussian_noise(frame, p, seed);
            } else if constexpr (std::is_same_v<P, ImpulseNoiseParams>) {
                prov.realized["pattern_seed"] = seed;
                return ops::impulse_noise(frame, p, seed);
            } else if constexpr (std::is_same_v<P, SpeckleNoiseParams>) {
                prov.realized["pattern_seed"] = seed;
                return ops::speckle_noise(frame, p, seed);
            } else if constexpr (std::is_same_v<P, ShotNoiseParams>) {
                prov.realized["pattern_seed"] = seed;
                return ops::shot_noise(frame, p, seed);
            } else if constexpr (std::is_same_v<P, PixelateParams>) {
                prov.realized["target_size"] = {std::max(1L, std::lround(frame.width() * p.fraction)),
                                                std::max(1L, std::lround(frame.height() * p.fraction))};
                return ops::pixelate(frame, p);
            } else if constexpr (std::is_same_v<P, JpegParams>) return ops::jpeg(frame, p);
            else if constexpr (std::is_same_v<P, ElasticParams>) {
                prov.realized["pattern_seed"] = seed;
                const std::int64_t n = p.keyframe_interval;
                std::int64_t k = ctx.time_index / n;
                if (ctx.time_index % n != 0 && ctx.time_index < 0) --k;
                prov.frame_detail["keyframes"] = {k, k + 1};
                prov.frame_detail["blend"] = static_cast<double>(ctx.time_index - k * n) / static_cast<double>(n);
                return ops::elastic(frame, p, seed, ctx.time_index);
            } else if constexpr (std::is_same_v<P, SpatterParams>) {
                prov.realized["pattern_seed"] = seed;
                return ops::spatter(frame, p, seed);
            } else if constexpr (std::is_same_v<P, FrostParams>) {
                const auto library = FrostLibrary::cached(p.texture_dir);
                const FrostPlacement pl = frost_placement(*library, frame.width(), frame.height(), seed);
                prov.realized["texture_index"] = pl.index;
                prov.realized["texture_scale"] = pl.scale;
                prov.realized["crop_offset"] = {pl.offset_x, pl.offset_y};
                return ops::frost(frame, p, *library, pl);
            } else {
                throw ContractError("unsupported kind in image-space engine");
            }
        },
        spec.params());
    out.set_coord(frame.coord());
    return {std::move(out), std::move(prov)};
}

CorruptionResult apply(const ImageFrame& frame, const CorruptionSpec& spec, const SeedContext& ctx) {
    CorruptionResult r = apply_unclipped(frame, spec, ctx);
    r.image.clip_in_place();
    return r;
}

CorruptionResult apply(const ImageFrame& frame, const CorruptionSpec& spec) {
    return apply(frame, spec, SeedContext::for_frame(spec.master_seed(), frame.coord(), spec.kind()));
}

}  // namespace cb
