#include "corruptbench/scene/scene_engine.h"

#include <string>

#include "corruptbench/core/error.h"
#include "corruptbench/corruption/params_json.h"
#include "corruptbench/scene/motion_fog.h"
#include "corruptbench/scene/weather.h"

namespace cb::scene {

namespace {

std::string frame_label(const FrameCoord& c) {
    return c.scene_id + " t=" + std::to_string(c.time_index) + " " + std::string(camera_name(c.camera));
}

const WeatherParams& weather_params(const CorruptionSpec& spec) {
    if (spec.kind() == CorruptionKind::Snow) return spec.as<SnowParams>();
    return spec.as<RainParams>();
}

Pose invert(const Pose& m) {
    Pose out{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) out[r * 4 + c] = m[c * 4 + r];
    }
    for (int r = 0; r < 3; ++r) {
        out[r * 4 + 3] = -(out[r * 4] * m[3] + out[r * 4 + 1] * m[7] + out[r * 4 + 2] * m[11]);
    }
    return out;
}

Pose compose(const Pose& a, const Pose& b) {
    Pose out{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out[r * 4 + c] = a[r * 4] * b[c] + a[r * 4 + 1] * b[4 + c] + a[r * 4 + 2] * b[8 + c];
        }
        out[r * 4 + 3] = a[r * 4] * b[3] + a[r * 4 + 1] * b[7] + a[r * 4 + 2] * b[11] + a[r * 4 + 3];
    }
    return out;
}

// Left-camera pose relative to the weather world frame (left camera at time 0).
std::optional<Pose> relative_pose(const std::optional<Pose>& pose, const std::optional<Pose>& pose_t0) {
    if (!pose) return std::nullopt;
    if (!pose_t0) return pose;
    return compose(*pose, invert(*pose_t0));
}

// Must be called before the simulator advances: the digest covers the initial state.
nlohmann::json weather_record(const WeatherSimulator& sim) {
    const ParticleField& field = sim.field();
    return {{"simulation_seed", field.seed},
            {"particle_count", field.particles.size()},
            {"spawn_box", {{"lo", field.bounds.lo}, {"hi", field.bounds.hi}}},
            {"trajectory_digest", particle_digest(field)},
            {"substep", sim.substep()},
            {"exposure_steps", sim.exposure_steps()}};
}

void record_weather(Provenance& prov, const nlohmann::json& record) {
    for (const auto& [key, value] : record.items()) prov.realized[key] = value;
}

}  // namespace

CorruptionResult corrupt_frame_unclipped(const ImageFrame& frame, const CorruptionSpec& spec,
                                         const SeedContext& ctx, const SceneInputs& inputs) {
    if (!needs_scene_inputs(spec.kind())) return apply_unclipped(frame, spec, ctx);
    const std::string name(kind_name(spec.kind()));
    Provenance prov = make_provenance(spec, ctx);
    const FrameCoord coord{ctx.scene_id, ctx.time_index, ctx.camera};

    switch (spec.kind()) {
        case CorruptionKind::MotionBlur: {
            if (!inputs.flow) throw ContractError(name + ": missing flow for frame " + frame_label(coord));
            const auto& p = spec.as<MotionBlurParams>();
            prov.frame_detail["samples"] = motion_blur_samples(*inputs.flow, p);
            return {motion_blur(frame, *inputs.flow, p), std::move(prov)};
        }
        case CorruptionKind::Fog: {
            if (!inputs.depth) throw ContractError(name + ": missing depth for frame " + frame_label(coord));
            return {fog(frame, *inputs.depth, spec.as<FogParams>()), std::move(prov)};
        }
        default: break;
    }

    if (!inputs.depth) throw ContractError(name + ": missing depth for frame " + frame_label(coord));
    if (!inputs.rig) throw ContractError(name + ": missing camera rig for frame " + frame_label(coord));
    require(ctx.time_index >= 0, name + ": weather frames need time_index >= 0");
    const WeatherParams& p = weather_params(spec);
    const SpawnBox box = spawn_box(p, *inputs.rig, frame.width(), frame.height());
    WeatherSimulator sim(spawn_particles(p, box, prov.stream_seed), p, inputs.rig->frame_interval);
    record_weather(prov, weather_record(sim));
    const Trajectory& traj = sim.window(ctx.time_index);
    const View view = View::of(*inputs.rig, ctx.camera, frame.width(), frame.height(),
                               relative_pose(inputs.left_pose, inputs.left_pose_t0));
    RenderStats stats;
    ImageFrame out = render_particles(frame, *inputs.depth, sim.field(), traj, p, view, &stats);
    out.set_coord(frame.coord());
    prov.frame_detail["fragments"] = stats.fragments;
    prov.frame_detail["occluded_fragments"] = stats.occluded;
    return {std::move(out), std::move(prov)};
}

CorruptionResult corrupt_frame(const ImageFrame& frame, const CorruptionSpec& spec, const SeedContext& ctx,
                               const SceneInputs& inputs) {
    CorruptionResult r = corrupt_frame_unclipped(frame, spec, ctx, inputs);
    r.image.clip_in_place();
    return r;
}

std::vector<std::array<CorruptionResult, 2>> corrupt_weather(const std::vector<StereoFrame>& frames,
                                                             const CameraRig& rig, const CorruptionSpec& spec) {
    require(spec.kind() == CorruptionKind::Snow || spec.kind() == CorruptionKind::Rain,
            "corrupt_weather handles snow and rain only");
    std::vector<std::array<CorruptionResult, 2>> out;
    if (frames.empty()) return out;
    const std::string name(kind_name(spec.kind()));
    for (const StereoFrame& f : frames) {
        if (!f.left || !f.right) {
            const ImageFrame* any = f.left ? f.left : f.right;
            throw ContractError(name + ": missing stereo counterpart" +
                                (any ? " for frame " + frame_label(any->coord()) : std::string()));
        }
        if (!f.depth_left || !f.depth_right) {
            throw ContractError(name + ": missing depth for frame " + frame_label(f.left->coord()));
        }
        require(f.left->same_shape(*f.right), name + ": left and right frames differ in size");
    }
    const ImageFrame& first = *frames.front().left;
    const std::string& scene = first.coord().scene_id;
    const WeatherParams& p = weather_params(spec);

    SeedContext ctx = SeedContext::for_frame(spec.master_seed(), first.coord(), spec.kind());
    ctx.time_index = 0;
    ctx.camera = Camera::Left;
    const std::uint64_t sim_seed = derive_stream_seed(ctx, spec.consistency());
    const SpawnBox box = spawn_box(p, rig, first.width(), first.height());
    WeatherSimulator sim(spawn_particles(p, box, sim_seed), p, rig.frame_interval);
    const std::optional<Pose> pose_t0 = frames.front().left_pose;
    const nlohmann::json record = weather_record(sim);

    std::int64_t last = -1;
    for (const StereoFrame& f : frames) {
        const std::int64_t t = f.left->coord().time_index;
        require(f.left->coord().scene_id == scene, name + ": frames from different scenes in one sequence");
        require(t > last, name + ": frames must have strictly increasing time indices");
        last = t;
        const Trajectory& traj = sim.window(t);
        std::array<CorruptionResult, 2> pair;
        for (Camera cam : {Camera::Left, Camera::Right}) {
            const ImageFrame& img = cam == Camera::Left ? *f.left : *f.right;
            const DepthMap& depth = cam == Camera::Left ? *f.depth_left : *f.depth_right;
            require(depth.width() == img.width() && depth.height() == img.height(),
                    name + ": depth size does not match frame " + frame_label(img.coord()));
            SeedContext fctx = SeedContext::for_frame(spec.master_seed(), img.coord(), spec.kind());
            Provenance prov = make_provenance(spec, fctx);
            record_weather(prov, record);
            const View view =
                View::of(rig, cam, img.width(), img.height(), relative_pose(f.left_pose, pose_t0));
            RenderStats stats;
            ImageFrame rendered = render_particles(img, depth, sim.field(), traj, p, view, &stats);
            rendered.clip_in_place();
            rendered.set_coord(img.coord());
            prov.frame_detail["fragments"] = stats.fragments;
            prov.frame_detail["occluded_fragments"] = stats.occluded;
            pair[cam == Camera::Left ? 0 : 1] = {std::move(rendered), std::move(prov)};
        }
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace cb::scene
