#include <cmath>

#include "corruptbench/core/filter.h"
#include "corruptbench/corruption/operators.h"
#include "corruptbench/corruption/seed.h"

namespace cb::ops {

ImageFrame defocus_blur(const ImageFrame& frame, const DefocusBlurParams& p) {
    if (p.radius < 1.0) return frame;
    return convolve_2d(frame, disk_kernel(p.radius));
}

ImageFrame gaussian_blur(const ImageFrame& frame, const GaussianBlurParams& p) {
    return gaussian_blur_image(frame, p.sigma);
}

void shuffle_pixels(ImageFrame& frame, int iterations, double radius, std::uint64_t seed) {
    if (iterations <= 0 || radius <= 0.0) return;
    const double reach = radius + 0.5;
    Rng rng(seed);
    const int w = frame.width();
    const int h = frame.height();
    for (int it = 0; it < iterations; ++it) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                // Both offsets are always drawn so the stream does not depend on bounds.
                const auto dx = static_cast<int>(std::lround(rng.uniform(-reach, reach)));
                const auto dy = static_cast<int>(std::lround(rng.uniform(-reach, reach)));
                const int px = x + dx;
                const int py = y + dy;
                if (px < 0 || py < 0 || px >= w || py >= h) continue;
                for (int c = 0; c < 3; ++c) std::swap(frame.at(x, y, c), frame.at(px, py, c));
            }
        }
    }
}

ImageFrame glass_blur(const ImageFrame& frame, const GlassBlurParams& p, std::uint64_t seed) {
    ImageFrame out = gaussian_blur_image(frame, p.sigma);
    shuffle_pixels(out, p.iterations, p.radius, seed);
    return out;
}

ImageFrame zoom_center(const ImageFrame& frame, double factor) {
    if (factor == 1.0) return frame;
    const double cx = (frame.width() - 1) * 0.5;
    const double cy = (frame.height() - 1) * 0.5;
    ImageFrame out(frame.width(), frame.height(), 0.0f, frame.coord());
    for (int y = 0; y < frame.height(); ++y) {
        const double sy = cy + (y - cy) / factor;
        for (int x = 0; x < frame.width(); ++x) {
            const double sx = cx + (x - cx) / factor;
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = sample_bilinear(frame, sx, sy, c);
        }
    }
    return out;
}

ImageFrame zoom_blur(const ImageFrame& frame, const ZoomBlurParams& p) {
    std::vector<double> acc(frame.samples().size(), 0.0);
    for (double z : p.schedule) {
        const ImageFrame layer = zoom_center(frame, z);
        const auto s = layer.samples();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
    }
    ImageFrame out = frame;
    auto dst = out.samples();
    const double n = static_cast<double>(p.schedule.size());
    for (std::size_t i = 0; i < acc.size(); ++i) dst[i] = static_cast<float>(acc[i] / n);
    return out;
}

}  // namespace cb::ops
