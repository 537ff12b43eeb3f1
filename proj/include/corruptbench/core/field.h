#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cb {

/// What a dense prediction represents. Flow has two components (u, v),
/// disparities one. `Disparity2` is the target-frame disparity of scene flow.
enum class FieldKind : std::uint8_t { Flow = 0, Disparity1 = 1, Disparity2 = 2 };

std::string_view field_kind_name(FieldKind kind);
int arity_of(FieldKind kind) noexcept;

/// Dense per-pixel vector field f(I): optical flow or disparity, float32 row-major.
class PredictionField {
public:
    PredictionField() = default;
    PredictionField(int width, int height, FieldKind kind, float fill = 0.0f);
    PredictionField(int width, int height, FieldKind kind, std::vector<float> data);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] int arity() const noexcept { return arity_of(kind_); }
    [[nodiscard]] FieldKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    [[nodiscard]] float& at(int x, int y, int component = 0) noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * arity() + component];
    }
    [[nodiscard]] float at(int x, int y, int component = 0) const noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * arity() + component];
    }
    /// Component `c` of pixel with linear index `i`.
    [[nodiscard]] float value(std::size_t i, int c = 0) const noexcept {
        return data_[i * arity() + c];
    }

    [[nodiscard]] std::span<const float> data() const noexcept { return data_; }
    [[nodiscard]] std::span<float> data() noexcept { return data_; }

    [[nodiscard]] bool all_finite() const noexcept;

    friend bool operator==(const PredictionField&, const PredictionField&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    FieldKind kind_ = FieldKind::Flow;
    std::vector<float> data_;
};

/// Metric depth per pixel. Invalid pixels hold `kInvalid` and are treated as
/// infinitely far by depth-dependent operators.
class DepthMap {
public:
    static constexpr float kInvalid = std::numeric_limits<float>::infinity();

    DepthMap() = default;
    DepthMap(int width, int height, float fill = kInvalid);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] float& at(int x, int y) noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    [[nodiscard]] float at(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    [[nodiscard]] static bool is_valid(float z) noexcept { return std::isfinite(z) && z > 0.0f; }
    [[nodiscard]] std::span<const float> data() const noexcept { return data_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Row-major 3x4 world-to-camera extrinsic [R | t].
using Pose = std::array<double, 12>;

/// Rectified stereo rig. Principal point defaults to the image center when unset.
struct CameraRig {
    double focal_x = 0.0;     ///< pixels
    double baseline = 0.0;    ///< meters
    std::optional<double> cx;
    std::optional<double> cy;
    double frame_interval = 0.04;  ///< seconds between consecutive time indices

    void validate() const;
};

/// Disparities at or below this many pixels become invalid depth.
inline constexpr double kMinDisparity = 1e-6;

/// Z = focal_x * baseline / d per pixel; d <= kMinDisparity maps to DepthMap::kInvalid.
DepthMap depth_from_disparity(const PredictionField& disparity, const CameraRig& rig);

}  // namespace cb
