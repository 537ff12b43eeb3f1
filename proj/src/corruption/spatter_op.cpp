#include <algorithm>
#include <cmath>

#include "corruptbench/core/filter.h"
#include "corruptbench/corruption/operators.h"
#include "corruptbench/corruption/seed.h"

namespace cb::ops {

Plane spatter_layer(int width, int height, const SpatterParams& p, std::uint64_t seed) {
    Rng rng(seed);
    Plane noise(width, height);
    for (float& v : noise.values()) v = static_cast<float>(rng.normal());
    Plane z = gaussian_blur_plane(noise, p.blur_sigma);

    double mean = 0.0;
    for (float v : z.values()) mean += v;
    mean /= static_cast<double>(z.values().size());
    double var = 0.0;
    for (float v : z.values()) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(z.values().size()));
    const double scale = sd > 0.0 ? 1.0 / sd : 0.0;

    // Soft edge of width 0.05 in liquid level.
    for (float& v : z.values()) {
        const double level = 0.5 + 0.5 * p.noise_sigma * (v - mean) * scale;
        v = static_cast<float>(p.alpha * std::clamp((level - p.threshold) / 0.05, 0.0, 1.0));
    }
    return z;
}

ImageFrame spatter(const ImageFrame& frame, const SpatterParams& p, std::uint64_t seed) {
    if (p.alpha == 0.0) return frame;
    const Plane m = spatter_layer(frame.width(), frame.height(), p, seed);
    ImageFrame out = frame;
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            const float a = m.at(x, y);
            for (int c = 0; c < 3; ++c) {
                out.at(x, y, c) = (1.0f - a) * frame.at(x, y, c) + a * static_cast<float>(p.color[c]);
            }
        }
    }
    return out;
}

}  // namespace cb::ops
