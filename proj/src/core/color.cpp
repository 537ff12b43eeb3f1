#include "corruptbench/core/color.h"

#include <algorithm>
#include <cmath>

namespace cb {

Hsv rgb_to_hsv(float r, float g, float b) noexcept {
    const float maxc = std::max({r, g, b});
    const float minc = std::min({r, g, b});
    Hsv out{0.0f, 0.0f, maxc};
    const float delta = maxc - minc;
    if (maxc <= 0.0f || delta <= 0.0f) return out;
    out.s = delta / maxc;
    float h;
    if (maxc == r) {
        h = (g - b) / delta;
    } else if (maxc == g) {
        h = 2.0f + (b - r) / delta;
    } else {
        h = 4.0f + (r - g) / delta;
    }
    h /= 6.0f;
    if (h < 0.0f) h += 1.0f;
    out.h = h;
    return out;
}

void hsv_to_rgb(const Hsv& hsv, float& r, float& g, float& b) noexcept {
    const float v = hsv.v;
    if (hsv.s <= 0.0f) {
        r = g = b = v;
        return;
    }
    const float h6 = hsv.h * 6.0f;
    const int sector = static_cast<int>(std::floor(h6)) % 6;
    const float f = h6 - std::floor(h6);
    const float p = v * (1.0f - hsv.s);
    const float q = v * (1.0f - hsv.s * f);
    const float t = v * (1.0f - hsv.s * (1.0f - f));
    switch (sector) {
        case 0: r = v; g = t; b = p; break;
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
}

Plane luma(const ImageFrame& frame) {
    Plane out(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            out.at(x, y) = static_cast<float>(0.299 * frame.at(x, y, 0) +
                                              0.587 * frame.at(x, y, 1) +
                                              0.114 * frame.at(x, y, 2));
        }
    }
    return out;
}

}  // namespace cb
