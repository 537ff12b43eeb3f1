#include <cmath>
#include <limits>

#include "corruptbench/corruption/operators.h"
#include "corruptbench/corruption/seed.h"

namespace cb::ops {

ImageFrame gaussian_noise(const ImageFrame& frame, const GaussianNoiseParams& p, std::uint64_t seed) {
    Rng rng(seed);
    ImageFrame out = frame;
    for (float& v : out.samples()) v = static_cast<float>(v + p.alpha * rng.normal());
    return out;
}

ImageFrame impulse_noise(const ImageFrame& frame, const ImpulseNoiseParams& p, std::uint64_t seed) {
    Rng rng(seed);
    ImageFrame out = frame;
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            const double hit = rng.uniform();
            const double salt = rng.uniform();
            if (hit < p.p) {
                const float v = salt < 0.5 ? 0.0f : 1.0f;
                for (int c = 0; c < 3; ++c) out.at(x, y, c) = v;
            }
        }
    }
    return out;
}

ImageFrame speckle_noise(const ImageFrame& frame, const SpeckleNoiseParams& p, std::uint64_t seed) {
    Rng rng(seed);
    ImageFrame out = frame;
    for (float& v : out.samples()) v = static_cast<float>(v + v * p.alpha * rng.normal());
    return out;
}

ImageFrame shot_noise(const ImageFrame& frame, const ShotNoiseParams& p, std::uint64_t seed) {
    if (std::isinf(p.c)) return frame;
    Rng rng(seed);
    ImageFrame out = frame;
    for (float& v : out.samples()) {
        const double lambda = std::max(0.0, static_cast<double>(v)) * p.c;
        v = static_cast<float>(static_cast<double>(rng.poisson(lambda)) / p.c);
    }
    return out;
}

}  // namespace cb::ops
