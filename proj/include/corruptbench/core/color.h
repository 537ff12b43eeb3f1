#pragma once

#include "corruptbench/core/image.h"

namespace cb {

struct Hsv {
    float h;  ///< hue in [0,1)
    float s;
    float v;
};

Hsv rgb_to_hsv(float r, float g, float b) noexcept;
void hsv_to_rgb(const Hsv& hsv, float& r, float& g, float& b) noexcept;

/// Rec.601 luma 0.299 R + 0.587 G + 0.114 B.
Plane luma(const ImageFrame& frame);

}  // namespace cb
