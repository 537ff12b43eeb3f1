#include "corruptbench/core/image.h"

#include <algorithm>
#include <cmath>

#include "corruptbench/core/error.h"

namespace cb {

std::string_view camera_name(Camera camera) {
    return camera == Camera::Left ? "left" : "right";
}

Camera camera_from_name(std::string_view name) {
    if (name == "left") return Camera::Left;
    if (name == "right") return Camera::Right;
    throw ContractError("unknown camera '" + std::string(name) + "' (expected left or right)");
}

ImageFrame::ImageFrame(int width, int height, float fill, FrameCoord coord)
    : width_(width), height_(height), coord_(std::move(coord)) {
    require(width >= 1 && height >= 1, "image dimensions must be at least 1x1");
    data_.assign(pixel_count() * kChannels, fill);
}

ImageFrame::ImageFrame(int width, int height, std::vector<float> data, FrameCoord coord)
    : width_(width), height_(height), data_(std::move(data)), coord_(std::move(coord)) {
    require(width >= 1 && height >= 1, "image dimensions must be at least 1x1");
    require(data_.size() == pixel_count() * kChannels,
            "image sample count does not match width*height*3");
}

ImageFrame ImageFrame::clipped() const {
    ImageFrame out = *this;
    out.clip_in_place();
    return out;
}

void ImageFrame::clip_in_place() noexcept {
    for (float& v : data_) {
        // NaN fails both comparisons and lands on 0.
        v = v >= 0.0f ? std::min(v, 1.0f) : 0.0f;
    }
}

bool ImageFrame::is_clip_valid() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](float v) { return std::isfinite(v) && v >= 0.0f && v <= 1.0f; });
}

Plane::Plane(int width, int height, float fill) : width_(width), height_(height) {
    require(width >= 1 && height >= 1, "plane dimensions must be at least 1x1");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

std::vector<Plane> split_channels(const ImageFrame& frame) {
    std::vector<Plane> planes(ImageFrame::kChannels, Plane(frame.width(), frame.height()));
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            for (int c = 0; c < ImageFrame::kChannels; ++c) {
                planes[c].at(x, y) = frame.at(x, y, c);
            }
        }
    }
    return planes;
}

ImageFrame merge_channels(const std::vector<Plane>& planes, const FrameCoord& coord) {
    require(planes.size() == ImageFrame::kChannels, "merge_channels needs exactly 3 planes");
    const int w = planes[0].width();
    const int h = planes[0].height();
    ImageFrame out(w, h, 0.0f, coord);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ImageFrame::kChannels; ++c) {
                out.at(x, y, c) = planes[c].at(x, y);
            }
        }
    }
    return out;
}

}  // namespace cb
