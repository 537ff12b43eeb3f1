#include "corruptbench/core/mask.h"

#include <algorithm>

#include "corruptbench/core/error.h"

namespace cb {

PixelMask::PixelMask(int width, int height, bool value)
    : width_(width), height_(height), kept_fraction_(value ? 1.0 : 0.0) {
    require(width >= 1 && height >= 1, "mask dimensions must be at least 1x1");
    bits_.assign(static_cast<std::size_t>(width) * height, value);
}

PixelMask::PixelMask(int width, int height, std::vector<bool> bits, double kept_fraction)
    : width_(width), height_(height), bits_(std::move(bits)), kept_fraction_(kept_fraction) {
    require(width >= 1 && height >= 1, "mask dimensions must be at least 1x1");
    require(bits_.size() == static_cast<std::size_t>(width) * height,
            "mask bit count does not match width*height");
}

std::size_t PixelMask::popcount() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

}  // namespace cb
