#include "corruptbench/pipeline/synthetic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"

#include "corruptbench/core/error.h"
#include "corruptbench/corruption/seed.h"
#include "corruptbench/io/field_io.h"
#include "corruptbench/io/png_io.h"

namespace cb {

namespace {

using V3 = std::array<double, 3>;

constexpr double kCameraHeight = 1.6;
constexpr double kInf = std::numeric_limits<double>::infinity();

V3 add(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 scale(const V3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Hash-based lattice noise so textures need no stored tables.
double lattice(std::uint64_t seed, long x, long y, long z) {
    std::uint64_t h = hash_combine(seed, static_cast<std::uint64_t>(x));
    h = hash_combine(h, static_cast<std::uint64_t>(y));
    h = hash_combine(h, static_cast<std::uint64_t>(z));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth_noise(std::uint64_t seed, const V3& p) {
    const long x0 = static_cast<long>(std::floor(p[0]));
    const long y0 = static_cast<long>(std::floor(p[1]));
    const long z0 = static_cast<long>(std::floor(p[2]));
    auto fade = [](double t) { return t * t * (3.0 - 2.0 * t); };
    const double fx = fade(p[0] - x0);
    const double fy = fade(p[1] - y0);
    const double fz = fade(p[2] - z0);
    double acc = 0.0;
    for (int dz = 0; dz <= 1; ++dz) {
        for (int dy = 0; dy <= 1; ++dy) {
            for (int dx = 0; dx <= 1; ++dx) {
                const double w = (dx ? fx : 1 - fx) * (dy ? fy : 1 - fy) * (dz ? fz : 1 - fz);
                acc += w * lattice(seed, x0 + dx, y0 + dy, z0 + dz);
            }
        }
    }
    return acc;
}

double fbm(std::uint64_t seed, V3 p, int octaves) {
    double sum = 0.0;
    double amp = 0.5;
    double norm = 0.0;
    for (int o = 0; o < octaves; ++o) {
        sum += amp * smooth_noise(seed + o, p);
        norm += amp;
        p = scale(p, 2.03);
        amp *= 0.5;
    }
    return sum / norm;
}

struct Palette {
    V3 a;
    V3 b;
};

constexpr Palette kPalettes[] = {
    {{0.55, 0.32, 0.22}, {0.85, 0.70, 0.50}},  // brick
    {{0.20, 0.35, 0.18}, {0.55, 0.70, 0.35}},  // foliage
    {{0.25, 0.28, 0.40}, {0.70, 0.75, 0.85}},  // slate
    {{0.60, 0.55, 0.20}, {0.95, 0.85, 0.45}},  // ochre
    {{0.45, 0.15, 0.20}, {0.90, 0.55, 0.50}},  // red
    {{0.35, 0.35, 0.35}, {0.80, 0.80, 0.78}},  // concrete
};
constexpr int kPaletteCount = 6;

V3 texture_color(std::uint64_t seed, int texture, const V3& p) {
    const Palette& pal = kPalettes[texture % kPaletteCount];
    double t = 0.0;
    switch (texture % 3) {
        case 0: {  // checker with grain
            const long c = static_cast<long>(std::floor(p[0] * 2.0)) + static_cast<long>(std::floor(p[1] * 2.0)) +
                           static_cast<long>(std::floor(p[2] * 2.0));
            t = 0.75 * static_cast<double>(c & 1) + 0.25 * fbm(seed + 17, scale(p, 6.0), 3);
            break;
        }
        case 1:  // stripes warped by noise
            t = 0.5 + 0.5 * std::sin(8.0 * p[1] + 6.0 * fbm(seed + 29, scale(p, 1.5), 3));
            break;
        default:  // marble-like fractal
            t = fbm(seed + 41, scale(p, 3.0), 5);
            t = std::clamp((t - 0.3) * 2.0, 0.0, 1.0);
            break;
    }
    t += 0.3 * (fbm(seed + 53, scale(p, 24.0), 2) - 0.5);
    V3 c;
    for (int i = 0; i < 3; ++i) c[i] = pal.a[i] + (pal.b[i] - pal.a[i]) * t;
    return c;
}

struct Hit {
    double t = kInf;
    V3 point{};
    V3 normal{};
    V3 velocity{};
    int texture = -1;  // -2 ground
};

}  // namespace

SyntheticWorld::SyntheticWorld(const SyntheticOptions& options) : options_(options) {
    require(options.width >= 8 && options.height >= 8, "synthetic frames must be at least 8x8");
    Rng rng(hash_combine(splitmix64(options.seed), 0x5CE4E));
    texture_seed_ = rng.next_u64();
    const int n_spheres = 3 + static_cast<int>(rng.uniform_int(0, 3));
    for (int i = 0; i < n_spheres; ++i) {
        const double r = rng.uniform(0.4, 1.3);
        const double z = rng.uniform(4.0, 18.0);
        const double x = rng.uniform(-0.45, 0.45) * z;
        Sphere s{{x, -kCameraHeight + r + rng.uniform(0.0, 0.8), z}, r, {0.0, 0.0, 0.0},
                 static_cast<int>(rng.uniform_int(0, 11))};
        if (i == 0) s.velocity = {rng.uniform(-1.5, 1.5), 0.0, rng.uniform(-1.0, 1.0)};
        spheres_.push_back(s);
    }
    const int n_boxes = 2 + static_cast<int>(rng.uniform_int(0, 3));
    for (int i = 0; i < n_boxes; ++i) {
        const double z = rng.uniform(6.0, 25.0);
        const double x = rng.uniform(-0.6, 0.6) * z;
        const double w = rng.uniform(0.8, 3.0);
        const double h = rng.uniform(1.0, 5.0);
        const double d = rng.uniform(0.8, 3.0);
        boxes_.push_back({{x - w / 2, -kCameraHeight, z}, {x + w / 2, -kCameraHeight + h, z + d},
                          static_cast<int>(rng.uniform_int(0, 11))});
    }
    // Backdrop of buildings closing most of the horizon.
    for (double x = -45.0; x < 45.0;) {
        const double w = rng.uniform(3.0, 9.0);
        const double z = rng.uniform(28.0, 45.0);
        const double h = rng.uniform(4.0, 18.0);
        boxes_.push_back({{x, -kCameraHeight, z}, {x + w, -kCameraHeight + h, z + rng.uniform(3.0, 8.0)},
                          static_cast<int>(rng.uniform_int(0, 11))});
        x += w + rng.uniform(0.0, 1.5);
    }
}

CameraRig SyntheticWorld::rig() const {
    CameraRig rig;
    rig.focal_x = options_.focal_x;
    rig.baseline = options_.baseline;
    rig.frame_interval = options_.frame_interval;
    return rig;
}

SyntheticView SyntheticWorld::render(std::int64_t time_index, Camera camera, const std::string& scene_id) const {
    const int w = options_.width;
    const int h = options_.height;
    const double fx = options_.focal_x;
    const double cx = (w - 1) * 0.5;
    const double cy = (h - 1) * 0.5;
    const double dt = options_.frame_interval;
    const double time = static_cast<double>(time_index) * dt;
    const double cam_x = camera == Camera::Right ? options_.baseline : 0.0;
    auto cam_at = [&](double t) { return V3{cam_x, 0.0, options_.camera_speed * t}; };
    const V3 origin = cam_at(time);
    const V3 next_origin = cam_at(time + dt);
    const V3 light = scale(V3{-0.4, 0.8, -0.45}, 1.0 / std::sqrt(0.16 + 0.64 + 0.2025));

    auto trace = [&](const V3& o, const V3& dir) {
        Hit best;
        if (dir[1] < -1e-9) {
            const double t = (-kCameraHeight - o[1]) / dir[1];
            if (t > 0.0 && t < best.t) {
                best.t = t;
                best.point = add(o, scale(dir, t));
                best.normal = {0, 1, 0};
                best.texture = -2;
                best.velocity = {0, 0, 0};
            }
        }
        for (const Sphere& s : spheres_) {
            const V3 c = add(s.center, scale(s.velocity, time));
            const V3 oc = sub(o, c);
            const double b = dot(oc, dir);
            const double cc = dot(oc, oc) - s.radius * s.radius;
            const double a = dot(dir, dir);
            const double disc = b * b - a * cc;
            if (disc < 0.0) continue;
            const double t = (-b - std::sqrt(disc)) / a;
            if (t > 1e-6 && t < best.t) {
                best.t = t;
                best.point = add(o, scale(dir, t));
                best.normal = scale(sub(best.point, c), 1.0 / s.radius);
                best.texture = s.texture;
                best.velocity = s.velocity;
            }
        }
        for (const Box& bx : boxes_) {
            double t0 = -kInf;
            double t1 = kInf;
            int axis = 0;
            double sign = 1.0;
            bool miss = false;
            for (int a = 0; a < 3; ++a) {
                if (std::abs(dir[a]) < 1e-12) {
                    if (o[a] < bx.lo[a] || o[a] > bx.hi[a]) miss = true;
                    continue;
                }
                double ta = (bx.lo[a] - o[a]) / dir[a];
                double tb = (bx.hi[a] - o[a]) / dir[a];
                double s = -1.0;
                if (ta > tb) {
                    std::swap(ta, tb);
                    s = 1.0;
                }
                if (ta > t0) {
                    t0 = ta;
                    axis = a;
                    sign = s;
                }
                t1 = std::min(t1, tb);
            }
            if (miss || t0 > t1 || t0 <= 1e-6 || t0 >= best.t) continue;
            best.t = t0;
            best.point = add(o, scale(dir, t0));
            best.normal = {0, 0, 0};
            best.normal[axis] = sign;
            best.texture = bx.texture;
            best.velocity = {0, 0, 0};
        }
        return best;
    };

    auto shade = [&](const Hit& hit, const V3& dir) -> V3 {
        if (hit.texture == -1) {
            // Sky gradient with soft clouds.
            const double up = std::clamp(dir[1] / std::sqrt(dot(dir, dir)) * 2.0, 0.0, 1.0);
            const double yy = std::max(dir[1], 0.05);
            const double cloud = fbm(texture_seed_ + 7, {dir[0] / yy * 1.5, 1.0 / yy * 0.3, 0.5}, 4);
            const double c = std::clamp((cloud - 0.45) * 2.5, 0.0, 1.0) * std::clamp(up * 4.0, 0.0, 1.0);
            V3 sky{0.62 - 0.25 * up, 0.74 - 0.18 * up, 0.92 - 0.05 * up};
            for (int i = 0; i < 3; ++i) sky[i] = sky[i] * (1 - c) + 0.93 * c;
            return sky;
        }
        const V3 local = sub(hit.point, scale(hit.velocity, time));
        V3 albedo;
        if (hit.texture == -2) {
            const double n = fbm(texture_seed_ + 3, scale(local, 0.8), 5);
            const double tiles = (static_cast<long>(std::floor(local[0])) + static_cast<long>(std::floor(local[2]))) & 1;
            const double grain = fbm(texture_seed_ + 5, scale(local, 12.0), 2);
            const double v = 0.25 + 0.35 * n + 0.06 * tiles + 0.12 * grain;
            albedo = {v * 0.95, v * 0.92, v * 0.85};
        } else {
            albedo = texture_color(texture_seed_ + static_cast<std::uint64_t>(hit.texture), hit.texture, local);
        }
        // Weathering: independent low-amplitude variation per channel.
        for (int i = 0; i < 3; ++i) {
            albedo[i] += 0.10 * (fbm(texture_seed_ + 101 + static_cast<std::uint64_t>(i), scale(local, 4.0), 3) - 0.5);
        }
        const double lambert = std::max(0.0, dot(hit.normal, light));
        const double fade = std::exp(-hit.t / 120.0);
        V3 c;
        for (int i = 0; i < 3; ++i) c[i] = std::clamp((albedo[i] * (0.35 + 0.75 * lambert)) * fade + 0.7 * (1 - fade), 0.0, 1.0);
        return c;
    };

    SyntheticView view{ImageFrame(w, h, 0.0f, {scene_id, time_index, camera}), DepthMap(w, h),
                       PredictionField(w, h, FieldKind::Disparity1), PredictionField(w, h, FieldKind::Flow)};
    constexpr double kSub[2] = {-0.25, 0.25};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            V3 color{0, 0, 0};
            for (double sy : kSub) {
                for (double sx : kSub) {
                    const V3 dir{(x + sx - cx) / fx, -(y + sy - cy) / fx, 1.0};
                    const V3 c = shade(trace(origin, dir), dir);
                    for (int i = 0; i < 3; ++i) color[i] += 0.25 * c[i];
                }
            }
            for (int i = 0; i < 3; ++i) view.image.at(x, y, i) = static_cast<float>(color[i]);

            const V3 dir{(x - cx) / fx, -(y - cy) / fx, 1.0};
            const Hit hit = trace(origin, dir);
            if (hit.texture == -1) continue;  // sky: invalid depth, zero disparity and flow
            const double z = hit.t;           // dir has unit z
            view.depth.at(x, y) = static_cast<float>(z);
            view.disparity.at(x, y) = static_cast<float>(fx * options_.baseline / z);
            const V3 moved = add(hit.point, scale(hit.velocity, dt));
            const V3 rel = sub(moved, next_origin);
            if (rel[2] > 1e-3) {
                view.flow.at(x, y, 0) = static_cast<float>(cx + fx * rel[0] / rel[2] - x);
                view.flow.at(x, y, 1) = static_cast<float>(cy - fx * rel[1] / rel[2] - y);
            }
        }
    }
    return view;
}

std::vector<SyntheticView> synthetic_corpus(int count, int width, int height, std::uint64_t seed) {
    std::vector<SyntheticView> out;
    for (int i = 0; i < count; ++i) {
        SyntheticOptions opt;
        opt.width = width;
        opt.height = height;
        opt.focal_x = 166.0 * width / 192.0;
        opt.seed = hash_combine(seed, static_cast<std::uint64_t>(i));
        SyntheticWorld world(opt);
        out.push_back(world.render(0, Camera::Left, "corpus" + std::to_string(i)));
    }
    return out;
}

std::filesystem::path write_synthetic_manifest(const std::filesystem::path& root, int scenes, int frames, int width,
                                               int height, std::uint64_t seed) {
    require(scenes >= 1 && frames >= 1, "synthetic manifest needs at least one scene and frame");
    namespace fs = std::filesystem;
    fs::create_directories(root);
    nlohmann::json manifest;
    SyntheticOptions base;
    base.width = width;
    base.height = height;
    base.focal_x = 166.0 * width / 192.0;
    manifest["rig"] = {{"focal_x", base.focal_x}, {"baseline", base.baseline}, {"frame_interval", base.frame_interval}};
    manifest["assets"] = nlohmann::json::object();
    manifest["scenes"] = nlohmann::json::array();
    for (int s = 0; s < scenes; ++s) {
        char name[32];
        std::snprintf(name, sizeof name, "scene%02d", s);
        SyntheticOptions opt = base;
        opt.seed = hash_combine(seed, static_cast<std::uint64_t>(s));
        const SyntheticWorld world(opt);
        nlohmann::json scene{{"id", name}, {"frames", nlohmann::json::array()}};
        for (int t = 0; t < frames; ++t) {
            nlohmann::json frame{{"t", t}};
            for (Camera cam : {Camera::Left, Camera::Right}) {
                const SyntheticView v = world.render(t, cam, name);
                char stem[64];
                std::snprintf(stem, sizeof stem, "%s/%s/%04d", name, std::string(camera_name(cam)).c_str(), t);
                const fs::path dir = root / fs::path(stem).parent_path();
                fs::create_directories(dir);
                write_image(v.image, root / (std::string(stem) + ".png"));
                write_field(v.disparity, root / (std::string(stem) + ".disp.rsf"));
                write_field(v.flow, root / (std::string(stem) + ".flow.rsf"));
                write_depth(v.depth, root / (std::string(stem) + ".depth.rsf"));
                frame[std::string(camera_name(cam))] = {{"image", std::string(stem) + ".png"},
                                                        {"disparity", std::string(stem) + ".disp.rsf"},
                                                        {"flow", std::string(stem) + ".flow.rsf"},
                                                        {"depth", std::string(stem) + ".depth.rsf"}};
            }
            scene["frames"].push_back(frame);
        }
        manifest["scenes"].push_back(scene);
    }
    const fs::path path = root / "manifest.json";
    write_file_bytes(path, [&] {
        const std::string text = manifest.dump(2) + "\n";
        return std::vector<std::uint8_t>(text.begin(), text.end());
    }());
    return path;
}

}  // namespace cb
