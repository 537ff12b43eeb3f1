#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cb {

enum class Camera : std::uint8_t { Left = 0, Right = 1 };

std::string_view camera_name(Camera camera);
Camera camera_from_name(std::string_view name);

/// Position of a frame inside a stereo video manifest.
struct FrameCoord {
    std::string scene_id;
    std::int64_t time_index = 0;
    Camera camera = Camera::Left;

    friend bool operator==(const FrameCoord&, const FrameCoord&) = default;
};

/// Interleaved RGB raster, float32 samples nominally in [0,1], row-major.
///
/// Operators may produce values outside [0,1] internally; `clipped()` is applied
/// once when an operator returns.
class ImageFrame {
public:
    static constexpr int kChannels = 3;

    ImageFrame() = default;
    ImageFrame(int width, int height, float fill = 0.0f, FrameCoord coord = {});
    ImageFrame(int width, int height, std::vector<float> data, FrameCoord coord = {});

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] float& at(int x, int y, int c) noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
    }
    [[nodiscard]] float at(int x, int y, int c) const noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
    }

    [[nodiscard]] std::span<float> samples() noexcept { return data_; }
    [[nodiscard]] std::span<const float> samples() const noexcept { return data_; }

    [[nodiscard]] const FrameCoord& coord() const noexcept { return coord_; }
    void set_coord(FrameCoord coord) { coord_ = std::move(coord); }

    [[nodiscard]] bool same_shape(const ImageFrame& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    /// Copy with every sample clamped to [0,1] (NaN maps to 0).
    [[nodiscard]] ImageFrame clipped() const;
    void clip_in_place() noexcept;

    /// True when every sample is finite and inside [0,1].
    [[nodiscard]] bool is_clip_valid() const noexcept;

    friend bool operator==(const ImageFrame& a, const ImageFrame& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
    FrameCoord coord_;
};

/// Single-channel float plane; used for luma, liquid layers and displacement fields.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, float fill = 0.0f);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] float& at(int x, int y) noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    [[nodiscard]] float at(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    [[nodiscard]] std::span<float> values() noexcept { return data_; }
    [[nodiscard]] std::span<const float> values() const noexcept { return data_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Splits an interleaved frame into three planes and back.
std::vector<Plane> split_channels(const ImageFrame& frame);
ImageFrame merge_channels(const std::vector<Plane>& planes, const FrameCoord& coord = {});

}  // namespace cb
