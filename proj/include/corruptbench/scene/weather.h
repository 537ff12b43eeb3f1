#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corruptbench/core/field.h"
#include "corruptbench/core/image.h"
#include "corruptbench/corruption/params.h"

namespace cb::scene {

using Vec3 = std::array<double, 3>;

/// World frame: x right, y up, z forward; the left camera at time 0 sits at the
/// origin unless poses say otherwise.
struct SpawnBox {
    Vec3 lo{};
    Vec3 hi{};
    [[nodiscard]] double volume() const noexcept {
        return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
    }
};

struct Particle {
    Vec3 position{};
    Vec3 velocity{};   ///< base velocity (fall + wind), excluding wobble
    double radius = 0.0;
    double opacity = 0.0;
    double phase = 0.0;  ///< wobble phase in radians
};

struct ParticleField {
    std::vector<Particle> particles;
    std::uint64_t seed = 0;
    SpawnBox bounds;
};

/// Box covering both rectified view frustums between `near` and `near + slab_depth`,
/// widened by a 10% margin on x and y.
SpawnBox spawn_box(const WeatherParams& p, const CameraRig& rig, int width, int height);

/// round(density * volume) particles placed uniformly in the box.
ParticleField spawn_particles(const WeatherParams& p, const SpawnBox& box, std::uint64_t seed);

/// Hex digest of the initial particle state.
std::string particle_digest(const ParticleField& field);

/// Positions at consecutive substeps. `positions[s][i]` is particle i after s steps;
/// `wrapped[s][i]` is set when the step into s crossed the box boundary.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::vector<Vec3>> positions;
    std::vector<std::vector<std::uint8_t>> wrapped;
};

/// Velocity of `p` at time `t` including snow wobble.
Vec3 particle_velocity(const Particle& p, const WeatherParams& params, double t);

/// Advances every particle by `steps` Euler substeps of `dt` starting at `t0`;
/// particles leaving the box re-enter periodically (out the bottom, in at the top).
/// Returns steps + 1 snapshots. Throws ContractError when steps < 2 or the box is empty.
Trajectory simulate_particles(ParticleField& field, const WeatherParams& params, double t0, double dt, int steps);

/// Sequential simulator for a whole scene. Time 0 is frame 0; the simulation
/// starts one exposure before it so the first frame already has streak history.
class WeatherSimulator {
public:
    WeatherSimulator(ParticleField field, const WeatherParams& params, double frame_interval);

    /// Substeps spanning the exposure window ending at frame `time_index`.
    /// Frames must be requested in non-decreasing order.
    const Trajectory& window(std::int64_t time_index);

    [[nodiscard]] int exposure_steps() const noexcept { return exposure_steps_; }
    [[nodiscard]] double substep() const noexcept { return dt_; }
    [[nodiscard]] const ParticleField& field() const noexcept { return field_; }

private:
    void step();

    ParticleField field_;
    WeatherParams params_;
    double dt_;
    int exposure_steps_;
    std::int64_t step_index_;  ///< substeps since time 0 of the current state
    std::int64_t steps_per_frame_;
    Trajectory current_;  ///< rolling window of the last exposure_steps + 1 snapshots
    std::int64_t current_frame_ = -1;
};

/// One camera's view: intrinsics plus a world-to-camera transform.
struct View {
    double fx = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    std::array<double, 12> world_to_camera{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};

    /// Left or right view of a rectified rig; a pose, when given, is the left camera's.
    static View of(const CameraRig& rig, Camera camera, int width, int height,
                   const std::optional<Pose>& left_pose = std::nullopt);

    [[nodiscard]] Vec3 to_camera(const Vec3& w) const noexcept;
    /// Pixel (u, v) and camera depth Z; v grows downwards.
    [[nodiscard]] Vec3 project(const Vec3& w) const noexcept;
};

/// Fragments closer than this to the camera plane are dropped.
inline constexpr double kNearClip = 0.05;
/// Depth-test slack in meters.
inline constexpr double kDepthEpsilon = 0.01;

struct RenderStats {
    std::size_t fragments = 0;  ///< composited, after the depth test
    std::size_t occluded = 0;   ///< discarded by the depth test
};

/// Composites the particles of `traj` into `frame` (unclipped). Rain draws the
/// polyline through all substeps of the window; snow draws a sprite at the last one.
/// Fragments with Z > scene depth + kDepthEpsilon are discarded; invalid depth
/// never occludes. Blend: A = sum a*c, S = sum a,
///   out = (S > 1 ? A / S : A) + (1 - min(S, 1)) * I, then out = (1-g) out + g tint.
ImageFrame render_particles(const ImageFrame& frame, const DepthMap& depth, const ParticleField& field,
                            const Trajectory& traj, const WeatherParams& params, const View& view,
                            RenderStats* stats = nullptr);

}  // namespace cb::scene
