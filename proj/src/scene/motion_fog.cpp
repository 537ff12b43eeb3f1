#include "corruptbench/scene/motion_fog.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corruptbench/core/error.h"
#include "corruptbench/core/filter.h"

namespace cb::scene {

int motion_blur_samples(const PredictionField& flow, const MotionBlurParams& p) {
    require(flow.kind() == FieldKind::Flow, "motion blur needs a two-component flow field");
    double max_norm = 0.0;
    for (std::size_t i = 0; i < flow.pixel_count(); ++i) {
        max_norm = std::max(max_norm, std::hypot(static_cast<double>(flow.value(i, 0)),
                                                 static_cast<double>(flow.value(i, 1))));
    }
    return std::max(1, static_cast<int>(std::floor(p.sample_density * p.flow_gain * max_norm)));
}

ImageFrame motion_blur(const ImageFrame& frame, const PredictionField& flow, const MotionBlurParams& p) {
    require(flow.width() == frame.width() && flow.height() == frame.height(),
            "flow field size does not match the frame");
    const int n = motion_blur_samples(flow, p);
    ImageFrame out(frame.width(), frame.height(), 0.0f, frame.coord());
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            const double vx = p.flow_gain * flow.at(x, y, 0);
            const double vy = p.flow_gain * flow.at(x, y, 1);
            double acc[3] = {0.0, 0.0, 0.0};
            for (int k = 0; k <= n; ++k) {
                const double f = static_cast<double>(k) / n;
                const auto s = sample_bilinear_rgb(frame, x + f * vx, y + f * vy);
                for (int c = 0; c < 3; ++c) acc[c] += s[c];
            }
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c] / (n + 1));
        }
    }
    return out;
}

ImageFrame fog(const ImageFrame& frame, const DepthMap& depth, const FogParams& p) {
    require(depth.width() == frame.width() && depth.height() == frame.height(),
            "depth map size does not match the frame");
    ImageFrame out = frame;
    if (std::isinf(p.visibility)) return out;
    const double k = std::log(20.0) / p.visibility;
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            const float d = depth.at(x, y);
            // Zero depth is the camera plane (no attenuation); non-finite depth is sky.
            const double tr = std::isfinite(d) && d >= 0.0f ? std::exp(-static_cast<double>(d) * k) : 0.0;
            for (int c = 0; c < 3; ++c) {
                out.at(x, y, c) = static_cast<float>(frame.at(x, y, c) * tr + p.sky * (1.0 - tr));
            }
        }
    }
    return out;
}

}  // namespace cb::scene
