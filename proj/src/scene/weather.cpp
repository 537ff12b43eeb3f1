#include "corruptbench/scene/weather.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>

#include "corruptbench/core/error.h"
#include "corruptbench/corruption/seed.h"

namespace cb::scene {

SpawnBox spawn_box(const WeatherParams& p, const CameraRig& rig, int width, int height) {
    rig.validate();
    const double cx = rig.cx.value_or((width - 1) * 0.5);
    const double cy = rig.cy.value_or((height - 1) * 0.5);
    const double far = p.near + p.slab_depth;
    const double x_lo = -cx / rig.focal_x * far;
    const double x_hi = (width - 1 - cx) / rig.focal_x * far + rig.baseline;
    const double y_lo = -(height - 1 - cy) / rig.focal_x * far;
    const double y_hi = cy / rig.focal_x * far;
    const double mx = 0.1 * (x_hi - x_lo);
    const double my = 0.1 * (y_hi - y_lo);
    return {{x_lo - mx, y_lo - my, p.near}, {x_hi + mx, y_hi + my, far}};
}

ParticleField spawn_particles(const WeatherParams& p, const SpawnBox& box, std::uint64_t seed) {
    require(box.volume() > 0.0, "particle spawn volume is empty");
    ParticleField field;
    field.seed = seed;
    field.bounds = box;
    const auto count = static_cast<std::size_t>(std::llround(p.density * box.volume()));
    field.particles.reserve(count);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        Particle q;
        for (int a = 0; a < 3; ++a) q.position[a] = rng.uniform(box.lo[a], box.hi[a]);
        const double speed = p.fall_speed * (1.0 + p.speed_jitter * rng.uniform(-1.0, 1.0));
        q.velocity = {p.wind[0], p.wind[1] - speed, p.wind[2]};
        q.radius = p.particle_radius * rng.uniform(0.75, 1.25);
        q.opacity = p.opacity;
        q.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        field.particles.push_back(q);
    }
    return field;
}

std::string particle_digest(const ParticleField& field) {
    std::uint64_t h = fnv1a64("particles");
    auto mix = [&h](double v) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof bits);
        h = hash_combine(h, bits);
    };
    for (const Particle& q : field.particles) {
        for (double v : q.position) mix(v);
        for (double v : q.velocity) mix(v);
        mix(q.radius);
        mix(q.opacity);
        mix(q.phase);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Vec3 particle_velocity(const Particle& p, const WeatherParams& params, double t) {
    Vec3 v = p.velocity;
    if (params.wobble_amplitude > 0.0) {
        const double w = 2.0 * std::numbers::pi * params.wobble_frequency;
        const double s = params.wobble_amplitude * w;
        v[0] += s * std::cos(w * t + p.phase);
        v[2] += s * std::sin(w * t + p.phase);
    }
    return v;
}

namespace {

// One Euler substep with periodic re-entry; returns true when the particle wrapped.
bool advance(Particle& q, const WeatherParams& params, const SpawnBox& box, double t, double dt) {
    const Vec3 v = particle_velocity(q, params, t);
    bool wrapped = false;
    for (int a = 0; a < 3; ++a) {
        q.position[a] += v[a] * dt;
        const double extent = box.hi[a] - box.lo[a];
        if (q.position[a] < box.lo[a]) {
            q.position[a] += extent * std::ceil((box.lo[a] - q.position[a]) / extent);
            wrapped = true;
        } else if (q.position[a] > box.hi[a]) {
            q.position[a] -= extent * std::ceil((q.position[a] - box.hi[a]) / extent);
            wrapped = true;
        }
    }
    return wrapped;
}

std::vector<Vec3> snapshot(const ParticleField& field) {
    std::vector<Vec3> s(field.particles.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = field.particles[i].position;
    return s;
}

}  // namespace

Trajectory simulate_particles(ParticleField& field, const WeatherParams& params, double t0, double dt, int steps) {
    require(steps >= 2, "particle simulation needs at least 2 steps");
    require(field.bounds.volume() > 0.0, "particle spawn volume is empty");
    Trajectory traj;
    traj.t0 = t0;
    traj.dt = dt;
    traj.positions.push_back(snapshot(field));
    traj.wrapped.emplace_back(field.particles.size(), 0);
    for (int s = 0; s < steps; ++s) {
        std::vector<std::uint8_t> wrapped(field.particles.size(), 0);
        for (std::size_t i = 0; i < field.particles.size(); ++i) {
            wrapped[i] = advance(field.particles[i], params, field.bounds, t0 + s * dt, dt) ? 1 : 0;
        }
        traj.positions.push_back(snapshot(field));
        traj.wrapped.push_back(std::move(wrapped));
    }
    return traj;
}

WeatherSimulator::WeatherSimulator(ParticleField field, const WeatherParams& params, double frame_interval)
    : field_(std::move(field)), params_(params) {
    require(frame_interval > 0.0, "frame interval must be > 0");
    require(field_.bounds.volume() > 0.0, "particle spawn volume is empty");
    steps_per_frame_ = params_.substeps;
    dt_ = frame_interval / static_cast<double>(steps_per_frame_);
    exposure_steps_ = static_cast<int>(std::lround(params_.exposure / dt_));
    step_index_ = -exposure_steps_;
    current_.dt = dt_;
    current_.positions.push_back(snapshot(field_));
    current_.wrapped.emplace_back(field_.particles.size(), 0);
}

void WeatherSimulator::step() {
    std::vector<std::uint8_t> wrapped(field_.particles.size(), 0);
    const double t = static_cast<double>(step_index_) * dt_;
    for (std::size_t i = 0; i < field_.particles.size(); ++i) {
        wrapped[i] = advance(field_.particles[i], params_, field_.bounds, t, dt_) ? 1 : 0;
    }
    ++step_index_;
    const auto keep = static_cast<std::size_t>(exposure_steps_) + 1;
    if (current_.positions.size() == keep) {
        // Recycle the oldest snapshot's storage.
        std::vector<Vec3> oldest = std::move(current_.positions.front());
        current_.positions.erase(current_.positions.begin());
        current_.wrapped.erase(current_.wrapped.begin());
        for (std::size_t i = 0; i < oldest.size(); ++i) oldest[i] = field_.particles[i].position;
        current_.positions.push_back(std::move(oldest));
    } else {
        current_.positions.push_back(snapshot(field_));
    }
    current_.wrapped.push_back(std::move(wrapped));
}

const Trajectory& WeatherSimulator::window(std::int64_t time_index) {
    require(time_index >= 0, "weather frames need time_index >= 0");
    if (time_index == current_frame_) return current_;
    require(time_index > current_frame_, "weather frames must be requested in time order");
    const std::int64_t target = time_index * steps_per_frame_;
    while (step_index_ < target) step();
    current_.t0 = static_cast<double>(target - exposure_steps_) * dt_;
    current_frame_ = time_index;
    return current_;
}

namespace {

using Rigid = std::array<double, 12>;

Rigid compose(const Rigid& a, const Rigid& b) {
    Rigid out{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out[r * 4 + c] = a[r * 4] * b[c] + a[r * 4 + 1] * b[4 + c] + a[r * 4 + 2] * b[8 + c];
        }
        out[r * 4 + 3] = a[r * 4] * b[3] + a[r * 4 + 1] * b[7] + a[r * 4 + 2] * b[11] + a[r * 4 + 3];
    }
    return out;
}

}  // namespace

View View::of(const CameraRig& rig, Camera camera, int width, int height, const std::optional<Pose>& left_pose) {
    rig.validate();
    View v;
    v.fx = rig.focal_x;
    v.cx = rig.cx.value_or((width - 1) * 0.5);
    v.cy = rig.cy.value_or((height - 1) * 0.5);
    if (left_pose) v.world_to_camera = *left_pose;
    if (camera == Camera::Right) {
        const Rigid shift{1, 0, 0, -rig.baseline, 0, 1, 0, 0, 0, 0, 1, 0};
        v.world_to_camera = compose(shift, v.world_to_camera);
    }
    return v;
}

Vec3 View::to_camera(const Vec3& w) const noexcept {
    const auto& m = world_to_camera;
    return {m[0] * w[0] + m[1] * w[1] + m[2] * w[2] + m[3], m[4] * w[0] + m[5] * w[1] + m[6] * w[2] + m[7],
            m[8] * w[0] + m[9] * w[1] + m[10] * w[2] + m[11]};
}

Vec3 View::project(const Vec3& w) const noexcept {
    const Vec3 c = to_camera(w);
    return {cx + fx * c[0] / c[2], cy - fx * c[1] / c[2], c[2]};
}

namespace {

struct Fragment {
    std::size_t pixel;
    double z;
    double coverage;
};

struct Accumulator {
    int width;
    int height;
    const DepthMap& depth;
    std::vector<double> a;  // 3 per pixel
    std::vector<double> s;
    RenderStats stats;

    void add(const Fragment& f, double opacity, const std::array<double, 3>& color) {
        const int x = static_cast<int>(f.pixel % static_cast<std::size_t>(width));
        const int y = static_cast<int>(f.pixel / static_cast<std::size_t>(width));
        const float scene_z = depth.at(x, y);
        if (DepthMap::is_valid(scene_z) && f.z > scene_z + kDepthEpsilon) {
            ++stats.occluded;
            return;
        }
        const double alpha = opacity * f.coverage;
        if (alpha <= 0.0) return;
        for (int c = 0; c < 3; ++c) a[f.pixel * 3 + c] += alpha * color[c];
        s[f.pixel] += alpha;
        ++stats.fragments;
    }
};

bool pixel_of(double u, double v, int w, int h, std::size_t& out) {
    const long x = std::lround(u);
    const long y = std::lround(v);
    if (x < 0 || y < 0 || x >= w || y >= h) return false;
    out = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
    return true;
}

// Samples the polyline every 0.5 px. `stamp` records the last particle that touched
// each pixel, so a pixel contributes once per particle (its first sample). A pixel
// is covered only while the drop passes over it, so coverage is the footprint
// width times the dwell fraction (d + 1) / (L + d) for footprint d and streak length L.
void streak_fragments(const Trajectory& traj, std::size_t i, double radius, const View& view, int w, int h,
                      std::vector<std::uint32_t>& stamp, std::vector<Fragment>& out) {
    out.clear();
    const std::size_t n = traj.positions.size();
    const auto tag = static_cast<std::uint32_t>(i + 1);
    std::size_t pixel = 0;
    auto emit = [&](double u, double v, double z) {
        if (!pixel_of(u, v, w, h, pixel) || stamp[pixel] == tag) return;
        stamp[pixel] = tag;
        out.push_back({pixel, z, std::min(1.0, 2.0 * view.fx * radius / z)});
    };
    if (n == 1) {
        const Vec3 p = view.project(traj.positions[0][i]);
        if (p[2] >= kNearClip) emit(p[0], p[1], p[2]);
        return;
    }
    double length = 0.0;
    double footprint = 0.0;
    Vec3 a = view.project(traj.positions[0][i]);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        const Vec3 b = view.project(traj.positions[s + 1][i]);
        const bool skip = traj.wrapped[s + 1][i] || a[2] < kNearClip || b[2] < kNearClip ||
                          std::max(a[0], b[0]) < -1.0 || std::min(a[0], b[0]) > w ||
                          std::max(a[1], b[1]) < -1.0 || std::min(a[1], b[1]) > h;
        if (!skip) {
            const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
            if (len <= 4.0 * (w + h)) {
                length += len;
                footprint = std::max(footprint, 2.0 * view.fx * radius / a[2]);
                const int count = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
                for (int k = 0; k <= count; ++k) {
                    const double f = static_cast<double>(k) / count;
                    emit(a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]), a[2] + f * (b[2] - a[2]));
                }
            }
        }
        a = b;
    }
    const double dwell = std::min(1.0, (footprint + 1.0) / (length + footprint));
    for (Fragment& f : out) f.coverage *= dwell;
}

void sprite_fragments(const Vec3& p, double radius, const View& view, int w, int h, std::vector<Fragment>& out) {
    out.clear();
    if (p[2] < kNearClip) return;
    const double r = view.fx * radius / p[2];
    std::size_t pixel = 0;
    if (r < 0.5) {
        if (pixel_of(p[0], p[1], w, h, pixel)) {
            out.push_back({pixel, p[2], std::min(1.0, std::numbers::pi * r * r)});
        }
        return;
    }
    const int x0 = static_cast<int>(std::floor(p[0] - r - 1.0));
    const int x1 = static_cast<int>(std::ceil(p[0] + r + 1.0));
    const int y0 = static_cast<int>(std::floor(p[1] - r - 1.0));
    const int y1 = static_cast<int>(std::ceil(p[1] + r + 1.0));
    for (int y = std::max(0, y0); y <= std::min(h - 1, y1); ++y) {
        for (int x = std::max(0, x0); x <= std::min(w - 1, x1); ++x) {
            const double cov = std::clamp(r + 0.5 - std::hypot(x - p[0], y - p[1]), 0.0, 1.0);
            if (cov > 0.0) out.push_back({static_cast<std::size_t>(y) * w + x, p[2], cov});
        }
    }
}

}  // namespace

ImageFrame render_particles(const ImageFrame& frame, const DepthMap& depth, const ParticleField& field,
                            const Trajectory& traj, const WeatherParams& params, const View& view,
                            RenderStats* stats) {
    require(depth.width() == frame.width() && depth.height() == frame.height(),
            "depth map size does not match the frame");
    require(!traj.positions.empty(), "empty particle trajectory");
    const int w = frame.width();
    const int h = frame.height();
    const std::size_t np = field.particles.size();
    require(traj.positions.back().size() == np, "trajectory does not match the particle field");

    std::array<double, 3> mean{0.0, 0.0, 0.0};
    const auto src = frame.samples();
    for (std::size_t i = 0; i < src.size(); ++i) mean[i % 3] += src[i];
    std::array<double, 3> color{};
    for (int c = 0; c < 3; ++c) {
        mean[c] /= static_cast<double>(frame.pixel_count());
        color[c] = (1.0 - params.ambient_mix) * params.color[c] + params.ambient_mix * mean[c];
    }

    Accumulator acc{w, h, depth, std::vector<double>(frame.pixel_count() * 3, 0.0),
                    std::vector<double>(frame.pixel_count(), 0.0), {}};
    std::vector<Fragment> frags;
    std::vector<std::uint32_t> stamp(params.streaks ? frame.pixel_count() : 0, 0);
    for (std::size_t i = 0; i < np; ++i) {
        const Particle& q = field.particles[i];
        if (params.streaks) {
            streak_fragments(traj, i, q.radius, view, w, h, stamp, frags);
        } else {
            sprite_fragments(view.project(traj.positions.back()[i]), q.radius, view, w, h, frags);
        }
        for (const Fragment& f : frags) acc.add(f, q.opacity, color);
    }

    ImageFrame out = frame;
    const double g = params.tint_strength;
    for (std::size_t p = 0; p < frame.pixel_count(); ++p) {
        const double s = acc.s[p];
        const double norm = s > 1.0 ? 1.0 / s : 1.0;
        const double keep = 1.0 - std::min(s, 1.0);
        for (int c = 0; c < 3; ++c) {
            float& v = out.samples()[p * 3 + c];
            double blended = v;
            if (s > 0.0) blended = acc.a[p * 3 + c] * norm + keep * v;
            if (g > 0.0) blended = (1.0 - g) * blended + g * params.tint[c];
            v = static_cast<float>(blended);
        }
    }
    if (stats) *stats = acc.stats;
    return out;
}

}  // namespace cb::scene
