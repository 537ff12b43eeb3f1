#include "corruptbench/core/field.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "corruptbench/core/error.h"

namespace cb {

std::string_view field_kind_name(FieldKind kind) {
    switch (kind) {
        case FieldKind::Flow: return "flow";
        case FieldKind::Disparity1: return "disparity1";
        case FieldKind::Disparity2: return "disparity2";
    }
    return "unknown";
}

int arity_of(FieldKind kind) noexcept { return kind == FieldKind::Flow ? 2 : 1; }

PredictionField::PredictionField(int width, int height, FieldKind kind, float fill)
    : width_(width), height_(height), kind_(kind) {
    require(width >= 1 && height >= 1, "field dimensions must be at least 1x1");
    data_.assign(pixel_count() * arity(), fill);
}

PredictionField::PredictionField(int width, int height, FieldKind kind, std::vector<float> data)
    : width_(width), height_(height), kind_(kind), data_(std::move(data)) {
    require(width >= 1 && height >= 1, "field dimensions must be at least 1x1");
    require(data_.size() == pixel_count() * arity(),
            "field value count does not match width*height*arity");
}

bool PredictionField::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

DepthMap::DepthMap(int width, int height, float fill) : width_(width), height_(height) {
    require(width >= 1 && height >= 1, "depth dimensions must be at least 1x1");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

void CameraRig::validate() const {
    require(focal_x > 0.0 && std::isfinite(focal_x), "camera rig focal_x must be > 0");
    require(baseline > 0.0 && std::isfinite(baseline), "camera rig baseline must be > 0");
    require(frame_interval > 0.0, "camera rig frame_interval must be > 0");
}

DepthMap depth_from_disparity(const PredictionField& disparity, const CameraRig& rig) {
    require(disparity.kind() != FieldKind::Flow,
            "depth_from_disparity needs a disparity field, got flow");
    rig.validate();
    DepthMap depth(disparity.width(), disparity.height());
    const double fb = rig.focal_x * rig.baseline;
    for (int y = 0; y < disparity.height(); ++y) {
        for (int x = 0; x < disparity.width(); ++x) {
            const double d = disparity.at(x, y);
            if (std::isfinite(d) && d > kMinDisparity) {
                depth.at(x, y) = static_cast<float>(fb / d);
            }
        }
    }
    return depth;
}

}  // namespace cb
