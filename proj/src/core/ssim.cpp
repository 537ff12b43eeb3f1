#include "corruptbench/core/ssim.h"

#include <vector>

#include "corruptbench/core/color.h"
#include "corruptbench/core/error.h"
#include "corruptbench/core/filter.h"

namespace cb {
namespace {

struct Grid {
    int w = 0;
    int h = 0;
    std::vector<double> v;
    double& at(int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; }
    double at(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }
};

// Filters `src` with the separable window. With `valid` only fully covered
// output positions are produced, otherwise the input is reflect-padded.
Grid window_filter(const Grid& src, const std::vector<double>& taps, bool valid) {
    const int r = static_cast<int>(taps.size()) / 2;
    const int ow = valid ? src.w - 2 * r : src.w;
    const int oh = valid ? src.h - 2 * r : src.h;
    const int off = valid ? r : 0;

    Grid rows{ow, src.h, std::vector<double>(static_cast<std::size_t>(ow) * src.h)};
    for (int y = 0; y < src.h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = -r; k <= r; ++k) {
                acc += taps[k + r] * src.at(reflect_index(x + off + k, src.w), y);
            }
            rows.at(x, y) = acc;
        }
    }
    Grid out{ow, oh, std::vector<double>(static_cast<std::size_t>(ow) * oh)};
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = -r; k <= r; ++k) {
                acc += taps[k + r] * rows.at(x, reflect_index(y + off + k, src.h));
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

}  // namespace

double ssim(const Plane& a, const Plane& b, const SsimOptions& options) {
    require(a.width() == b.width() && a.height() == b.height(),
            "ssim: image dimensions differ");
    const int w = a.width();
    const int h = a.height();
    const auto taps = gaussian_kernel_1d(options.window_sigma, options.window_radius);
    const int side = 2 * options.window_radius + 1;
    const bool valid = w >= side && h >= side;

    Grid ga{w, h, {}}, gb{w, h, {}}, gaa{w, h, {}}, gbb{w, h, {}}, gab{w, h, {}};
    const std::size_t n = static_cast<std::size_t>(w) * h;
    for (Grid* g : {&ga, &gb, &gaa, &gbb, &gab}) g->v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a.values()[i];
        const double y = b.values()[i];
        ga.v[i] = x;
        gb.v[i] = y;
        gaa.v[i] = x * x;
        gbb.v[i] = y * y;
        gab.v[i] = x * y;
    }
    const Grid mu_a = window_filter(ga, taps, valid);
    const Grid mu_b = window_filter(gb, taps, valid);
    const Grid e_aa = window_filter(gaa, taps, valid);
    const Grid e_bb = window_filter(gbb, taps, valid);
    const Grid e_ab = window_filter(gab, taps, valid);

    const double c1 = (options.k1 * options.dynamic_range) * (options.k1 * options.dynamic_range);
    const double c2 = (options.k2 * options.dynamic_range) * (options.k2 * options.dynamic_range);
    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.v.size(); ++i) {
        const double ma = mu_a.v[i];
        const double mb = mu_b.v[i];
        const double var_a = e_aa.v[i] - ma * ma;
        const double var_b = e_bb.v[i] - mb * mb;
        const double cov = e_ab.v[i] - ma * mb;
        const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
        const double den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
        total += num / den;
    }
    return total / static_cast<double>(mu_a.v.size());
}

double ssim(const ImageFrame& a, const ImageFrame& b, const SsimOptions& options) {
    require(a.same_shape(b), "ssim: image dimensions differ");
    return ssim(luma(a), luma(b), options);
}

}  // namespace cb
