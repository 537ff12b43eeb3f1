#include <algorithm>
#include <array>

#include "corruptbench/core/color.h"
#include "corruptbench/corruption/operators.h"

namespace cb::ops {

ImageFrame brightness(const ImageFrame& frame, const BrightnessParams& p) {
    ImageFrame out = frame;
    const auto c = static_cast<float>(p.c);
    for (float& v : out.samples()) v += c;
    return out;
}

ImageFrame contrast(const ImageFrame& frame, const ContrastParams& p) {
    std::array<double, 3> mean{0.0, 0.0, 0.0};
    const auto samples = frame.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) mean[i % 3] += samples[i];
    for (double& m : mean) m /= static_cast<double>(frame.pixel_count());

    ImageFrame out = frame;
    auto dst = out.samples();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const double m = mean[i % 3];
        dst[i] = static_cast<float>((samples[i] - m) * p.c + m);
    }
    return out;
}

ImageFrame saturate(const ImageFrame& frame, const SaturateParams& p) {
    ImageFrame out = frame;
    const auto alpha = static_cast<float>(p.alpha);
    const auto beta = static_cast<float>(p.beta);
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            Hsv hsv = rgb_to_hsv(frame.at(x, y, 0), frame.at(x, y, 1), frame.at(x, y, 2));
            hsv.s = std::clamp(hsv.s * alpha + beta, 0.0f, 1.0f);
            hsv_to_rgb(hsv, out.at(x, y, 0), out.at(x, y, 1), out.at(x, y, 2));
        }
    }
    return out;
}

}  // namespace cb::ops
