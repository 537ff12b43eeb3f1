#include "corruptbench/corruption/frost.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "corruptbench/core/error.h"
#include "corruptbench/core/filter.h"
#include "corruptbench/corruption/seed.h"
#include "corruptbench/io/png_io.h"

namespace cb {

namespace {

// Smooth value noise summed over octaves, roughly in [0,1].
Plane fractal_noise(int side, Rng& rng) {
    Plane acc(side, side, 0.0f);
    double amplitude = 0.5;
    double total = 0.0;
    for (int cell = side / 4; cell >= 2; cell /= 2) {
        const int n = side / cell + 2;
        std::vector<float> lattice(static_cast<std::size_t>(n) * n);
        for (float& v : lattice) v = static_cast<float>(rng.uniform());
        for (int y = 0; y < side; ++y) {
            const double gy = static_cast<double>(y) / cell;
            const int y0 = static_cast<int>(gy);
            const double ty = gy - y0;
            const double sy = ty * ty * (3.0 - 2.0 * ty);
            for (int x = 0; x < side; ++x) {
                const double gx = static_cast<double>(x) / cell;
                const int x0 = static_cast<int>(gx);
                const double tx = gx - x0;
                const double sx = tx * tx * (3.0 - 2.0 * tx);
                auto l = [&](int i, int j) { return lattice[static_cast<std::size_t>(j) * n + i]; };
                const double top = l(x0, y0) * (1 - sx) + l(x0 + 1, y0) * sx;
                const double bottom = l(x0, y0 + 1) * (1 - sx) + l(x0 + 1, y0 + 1) * sx;
                acc.at(x, y) += static_cast<float>(amplitude * (top * (1 - sy) + bottom * sy));
            }
        }
        total += amplitude;
        amplitude *= 0.55;
    }
    for (float& v : acc.values()) v = static_cast<float>(v / total);
    return acc;
}

void draw_segment(Plane& p, double x0, double y0, double x1, double y1, float intensity) {
    const double len = std::hypot(x1 - x0, y1 - y0);
    const int steps = std::max(1, static_cast<int>(len * 2.0));
    for (int s = 0; s <= steps; ++s) {
        const double f = static_cast<double>(s) / steps;
        const int x = static_cast<int>(std::lround(x0 + f * (x1 - x0)));
        const int y = static_cast<int>(std::lround(y0 + f * (y1 - y0)));
        if (x < 0 || y < 0 || x >= p.width() || y >= p.height()) continue;
        p.at(x, y) = std::max(p.at(x, y), intensity);
    }
}

// Branching needle crystals.
void grow_crystal(Plane& p, Rng& rng, double x, double y, double angle, double length, int depth) {
    const double x1 = x + length * std::cos(angle);
    const double y1 = y + length * std::sin(angle);
    draw_segment(p, x, y, x1, y1, static_cast<float>(0.45 + 0.12 * depth));
    if (depth == 0) return;
    const int branches = 2 + static_cast<int>(rng.uniform_int(0, 2));
    for (int b = 0; b < branches; ++b) {
        const double t = rng.uniform(0.3, 1.0);
        const double bx = x + t * (x1 - x);
        const double by = y + t * (y1 - y);
        const double turn = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 1.1);
        grow_crystal(p, rng, bx, by, angle + turn, length * rng.uniform(0.35, 0.6), depth - 1);
    }
}

ImageFrame procedural_texture(int side, std::uint64_t seed) {
    Rng rng(seed);
    const Plane haze = fractal_noise(side, rng);
    Plane crystals(side, side, 0.0f);
    const int count = side / 6;
    for (int i = 0; i < count; ++i) {
        grow_crystal(crystals, rng, rng.uniform(0, side), rng.uniform(0, side),
                     rng.uniform(0, 2 * std::numbers::pi), rng.uniform(0.05, 0.2) * side, 3);
    }
    crystals = gaussian_blur_plane(crystals, 0.7);
    const Plane grain = gaussian_blur_plane(fractal_noise(side, rng), 0.5);

    ImageFrame tex(side, side);
    constexpr double kIce[3] = {0.80, 0.88, 0.96};
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            const double v = std::clamp(
                0.25 + 0.55 * haze.at(x, y) + 0.9 * crystals.at(x, y) + 0.15 * (grain.at(x, y) - 0.5), 0.0, 1.0);
            for (int c = 0; c < 3; ++c) tex.at(x, y, c) = static_cast<float>(v * kIce[c] + 0.04 * (1.0 - v));
        }
    }
    return tex;
}

}  // namespace

FrostLibrary FrostLibrary::procedural(int side) {
    require(side >= 16, "frost texture side must be >= 16");
    FrostLibrary lib;
    for (std::uint64_t i = 0; i < 3; ++i) lib.textures_.push_back(procedural_texture(side, 0xF2057ULL + i));
    return lib;
}

FrostLibrary FrostLibrary::from_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw IoError("frost texture directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .png frost textures in " + dir.string());
    FrostLibrary lib;
    for (const auto& f : files) lib.textures_.push_back(read_image(f));
    return lib;
}

std::shared_ptr<const FrostLibrary> FrostLibrary::cached(const std::string& dir) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const FrostLibrary>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[dir];
    if (!slot) {
        slot = std::make_shared<const FrostLibrary>(dir.empty() ? procedural() : from_directory(dir));
    }
    return slot;
}

FrostPlacement frost_placement(const FrostLibrary& library, int width, int height, std::uint64_t seed) {
    require(library.size() > 0, "frost library is empty");
    Rng rng(seed);
    FrostPlacement pl;
    pl.index = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(library.size()) - 1));
    const ImageFrame& tex = library.texture(pl.index);
    // The scaled texture must cover the frame.
    const double cover = std::max({1.0, static_cast<double>(width) / tex.width(),
                                   static_cast<double>(height) / tex.height()});
    pl.scale = cover * rng.uniform(1.0, 1.5);
    const double spare_x = std::max(0.0, tex.width() * pl.scale - width);
    const double spare_y = std::max(0.0, tex.height() * pl.scale - height);
    pl.offset_x = std::floor(rng.uniform() * spare_x);
    pl.offset_y = std::floor(rng.uniform() * spare_y);
    return pl;
}

ImageFrame frost_layer(const FrostLibrary& library, const FrostPlacement& pl, int width, int height) {
    const ImageFrame& tex = library.texture(pl.index);
    ImageFrame out(width, height);
    for (int y = 0; y < height; ++y) {
        const double ty = (y + pl.offset_y + 0.5) / pl.scale - 0.5;
        for (int x = 0; x < width; ++x) {
            const double tx = (x + pl.offset_x + 0.5) / pl.scale - 0.5;
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = sample_bilinear(tex, tx, ty, c);
        }
    }
    return out;
}

namespace ops {

ImageFrame frost(const ImageFrame& frame, const FrostParams& p, const FrostLibrary& library,
                 const FrostPlacement& placement) {
    if (p.blend_weight == 1.0) return frame;
    const ImageFrame layer = frost_layer(library, placement, frame.width(), frame.height());
    ImageFrame out = frame;
    const auto w = static_cast<float>(p.blend_weight);
    auto dst = out.samples();
    const auto t = layer.samples();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = w * dst[i] + (1.0f - w) * t[i];
    return out;
}

}  // namespace ops

}  // namespace cb
