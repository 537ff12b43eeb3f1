#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cb {

/// Evaluation domain over a frame: one bit per pixel, row-major.
class PixelMask {
public:
    PixelMask() = default;
    /// All pixels set to `value`.
    PixelMask(int width, int height, bool value = true);
    PixelMask(int width, int height, std::vector<bool> bits, double kept_fraction);

    static PixelMask full(int width, int height) { return PixelMask(width, height, true); }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept { return bits_.size(); }

    [[nodiscard]] bool test(std::size_t index) const noexcept { return bits_[index]; }
    [[nodiscard]] bool test(int x, int y) const noexcept {
        return bits_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(std::size_t index, bool value) { bits_[index] = value; }

    [[nodiscard]] std::size_t popcount() const noexcept;
    /// Requested sampling fraction the mask was built for.
    [[nodiscard]] double kept_fraction() const noexcept { return kept_fraction_; }
    void set_kept_fraction(double fraction) { kept_fraction_ = fraction; }

    [[nodiscard]] const std::vector<bool>& bits() const noexcept { return bits_; }

    friend bool operator==(const PixelMask& a, const PixelMask& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<bool> bits_;
    double kept_fraction_ = 1.0;
};

}  // namespace cb
