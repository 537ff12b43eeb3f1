#pragma once

#include <array>
#include <vector>

#include "corruptbench/core/image.h"

namespace cb {

/// Symmetric reflection of an out-of-range index (… b a | a b c … c | c b …).
int reflect_index(int i, int n) noexcept;

/// Normalized 1D Gaussian taps of radius ceil(4*sigma); sigma <= 0 yields {1}.
std::vector<double> gaussian_kernel_1d(double sigma);
std::vector<double> gaussian_kernel_1d(double sigma, int radius);

/// 2D kernel stored row-major with odd side length.
struct Kernel2D {
    int radius = 0;
    std::vector<double> taps;  ///< (2r+1)^2 weights summing to 1

    [[nodiscard]] int side() const noexcept { return 2 * radius + 1; }
    [[nodiscard]] double at(int dx, int dy) const noexcept {
        return taps[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
    }
};

/// Flat disk of all offsets with dx^2 + dy^2 <= radius^2, equal weights.
Kernel2D disk_kernel(double radius);

/// Separable convolution with reflect padding.
Plane convolve_separable(const Plane& src, const std::vector<double>& taps);
ImageFrame convolve_separable(const ImageFrame& src, const std::vector<double>& taps);

/// Dense 2D convolution with reflect padding.
ImageFrame convolve_2d(const ImageFrame& src, const Kernel2D& kernel);

ImageFrame gaussian_blur_image(const ImageFrame& src, double sigma);
Plane gaussian_blur_plane(const Plane& src, double sigma);

/// Bilinear sample at continuous pixel coordinates (pixel centers on integers),
/// reflecting outside the image.
float sample_bilinear(const ImageFrame& src, double x, double y, int channel) noexcept;
float sample_bilinear(const Plane& src, double x, double y) noexcept;
/// All three channels at once; each equals sample_bilinear(src, x, y, c).
std::array<float, 3> sample_bilinear_rgb(const ImageFrame& src, double x, double y) noexcept;

/// Exact area-weighted box downsample to (width, height).
ImageFrame resize_box(const ImageFrame& src, int width, int height);
/// Center-anchored bilinear resample to (width, height).
ImageFrame resize_bilinear(const ImageFrame& src, int width, int height);

}  // namespace cb
