#include "corruptbench/core/filter.h"

#include <algorithm>
#include <cmath>

#include "corruptbench/core/error.h"

namespace cb {

int reflect_index(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

std::vector<double> gaussian_kernel_1d(double sigma) {
    if (!(sigma > 0.0)) return {1.0};
    return gaussian_kernel_1d(sigma, static_cast<int>(std::ceil(4.0 * sigma)));
}

std::vector<double> gaussian_kernel_1d(double sigma, int radius) {
    if (!(sigma > 0.0) || radius <= 0) return {1.0};
    std::vector<double> taps(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
        taps[i + radius] = w;
        sum += w;
    }
    for (double& w : taps) w /= sum;
    return taps;
}

Kernel2D disk_kernel(double radius) {
    require(radius >= 0.0, "disk radius must be >= 0");
    Kernel2D k;
    k.radius = static_cast<int>(std::floor(radius));
    const int side = k.side();
    k.taps.assign(static_cast<std::size_t>(side) * side, 0.0);
    const double r2 = radius * radius;
    int count = 0;
    for (int dy = -k.radius; dy <= k.radius; ++dy) {
        for (int dx = -k.radius; dx <= k.radius; ++dx) {
            if (dx * dx + dy * dy <= r2) {
                k.taps[static_cast<std::size_t>(dy + k.radius) * side + dx + k.radius] = 1.0;
                ++count;
            }
        }
    }
    for (double& w : k.taps) w /= count;
    return k;
}

namespace {

// Generic separable pass over an interleaved buffer with `channels` samples per pixel.
void convolve_rows(const float* src, float* dst, int w, int h, int channels,
                   const std::vector<double>& taps) {
    const int r = static_cast<int>(taps.size()) / 2;
    std::vector<int> idx(static_cast<std::size_t>(w + 2 * r));
    for (int i = -r; i < w + r; ++i) idx[i + r] = reflect_index(i, w);
    for (int y = 0; y < h; ++y) {
        const float* row = src + static_cast<std::size_t>(y) * w * channels;
        float* out = dst + static_cast<std::size_t>(y) * w * channels;
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < channels; ++c) {
                double acc = 0.0;
                for (int k = 0; k <= 2 * r; ++k) {
                    acc += taps[k] * row[static_cast<std::size_t>(idx[x + k]) * channels + c];
                }
                out[static_cast<std::size_t>(x) * channels + c] = static_cast<float>(acc);
            }
        }
    }
}

void convolve_cols(const float* src, float* dst, int w, int h, int channels,
                   const std::vector<double>& taps) {
    const int r = static_cast<int>(taps.size()) / 2;
    const std::size_t stride = static_cast<std::size_t>(w) * channels;
    std::vector<double> acc(stride);
    for (int y = 0; y < h; ++y) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int k = 0; k <= 2 * r; ++k) {
            const float* row = src + static_cast<std::size_t>(reflect_index(y + k - r, h)) * stride;
            const double t = taps[k];
            for (std::size_t i = 0; i < stride; ++i) acc[i] += t * row[i];
        }
        float* out = dst + static_cast<std::size_t>(y) * stride;
        for (std::size_t i = 0; i < stride; ++i) out[i] = static_cast<float>(acc[i]);
    }
}

}  // namespace

Plane convolve_separable(const Plane& src, const std::vector<double>& taps) {
    if (taps.size() == 1) return src;
    Plane tmp(src.width(), src.height());
    Plane out(src.width(), src.height());
    convolve_rows(src.values().data(), tmp.values().data(), src.width(), src.height(), 1, taps);
    convolve_cols(tmp.values().data(), out.values().data(), src.width(), src.height(), 1, taps);
    return out;
}

ImageFrame convolve_separable(const ImageFrame& src, const std::vector<double>& taps) {
    if (taps.size() == 1) return src;
    ImageFrame tmp(src.width(), src.height(), 0.0f, src.coord());
    ImageFrame out(src.width(), src.height(), 0.0f, src.coord());
    convolve_rows(src.samples().data(), tmp.samples().data(), src.width(), src.height(),
                  ImageFrame::kChannels, taps);
    convolve_cols(tmp.samples().data(), out.samples().data(), src.width(), src.height(),
                  ImageFrame::kChannels, taps);
    return out;
}

ImageFrame convolve_2d(const ImageFrame& src, const Kernel2D& kernel) {
    const int w = src.width();
    const int h = src.height();
    const int r = kernel.radius;
    // Gather the non-zero taps once; disks are sparse in their bounding square.
    struct Tap {
        int dx, dy;
        double w;
    };
    std::vector<Tap> taps;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            const double wt = kernel.at(dx, dy);
            if (wt != 0.0) taps.push_back({dx, dy, wt});
        }
    }
    std::vector<int> xi(static_cast<std::size_t>(w + 2 * r));
    for (int i = -r; i < w + r; ++i) xi[i + r] = reflect_index(i, w);

    ImageFrame out(w, h, 0.0f, src.coord());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc[3] = {0.0, 0.0, 0.0};
            for (const Tap& t : taps) {
                const int sy = reflect_index(y + t.dy, h);
                const int sx = xi[x + t.dx + r];
                for (int c = 0; c < 3; ++c) acc[c] += t.w * src.at(sx, sy, c);
            }
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c]);
        }
    }
    return out;
}

ImageFrame gaussian_blur_image(const ImageFrame& src, double sigma) {
    return convolve_separable(src, gaussian_kernel_1d(sigma));
}

Plane gaussian_blur_plane(const Plane& src, double sigma) {
    return convolve_separable(src, gaussian_kernel_1d(sigma));
}

namespace {

template <typename Fetch>
float bilinear(double x, double y, int w, int h, Fetch fetch) noexcept {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double ax = x - fx;
    const double ay = y - fy;
    const int x0 = reflect_index(static_cast<int>(fx), w);
    const int x1 = reflect_index(static_cast<int>(fx) + 1, w);
    const int y0 = reflect_index(static_cast<int>(fy), h);
    const int y1 = reflect_index(static_cast<int>(fy) + 1, h);
    const double top = (1.0 - ax) * fetch(x0, y0) + ax * fetch(x1, y0);
    const double bottom = (1.0 - ax) * fetch(x0, y1) + ax * fetch(x1, y1);
    return static_cast<float>((1.0 - ay) * top + ay * bottom);
}

}  // namespace

float sample_bilinear(const ImageFrame& src, double x, double y, int channel) noexcept {
    return bilinear(x, y, src.width(), src.height(),
                    [&](int px, int py) { return static_cast<double>(src.at(px, py, channel)); });
}

std::array<float, 3> sample_bilinear_rgb(const ImageFrame& src, double x, double y) noexcept {
    const int w = src.width();
    const int h = src.height();
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double ax = x - fx;
    const double ay = y - fy;
    const int x0 = reflect_index(static_cast<int>(fx), w);
    const int x1 = reflect_index(static_cast<int>(fx) + 1, w);
    const int y0 = reflect_index(static_cast<int>(fy), h);
    const int y1 = reflect_index(static_cast<int>(fy) + 1, h);
    const auto data = src.samples();
    const float* p00 = &data[(static_cast<std::size_t>(y0) * w + x0) * 3];
    const float* p10 = &data[(static_cast<std::size_t>(y0) * w + x1) * 3];
    const float* p01 = &data[(static_cast<std::size_t>(y1) * w + x0) * 3];
    const float* p11 = &data[(static_cast<std::size_t>(y1) * w + x1) * 3];
    std::array<float, 3> out{};
    for (int c = 0; c < 3; ++c) {
        const double top = (1.0 - ax) * static_cast<double>(p00[c]) + ax * static_cast<double>(p10[c]);
        const double bottom = (1.0 - ax) * static_cast<double>(p01[c]) + ax * static_cast<double>(p11[c]);
        out[c] = static_cast<float>((1.0 - ay) * top + ay * bottom);
    }
    return out;
}

float sample_bilinear(const Plane& src, double x, double y) noexcept {
    return bilinear(x, y, src.width(), src.height(),
                    [&](int px, int py) { return static_cast<double>(src.at(px, py)); });
}

namespace {

// Overlap weights of destination cells [i*scale, (i+1)*scale) with unit source cells.
struct Span {
    int first;
    std::vector<double> weights;
};

std::vector<Span> box_spans(int src_n, int dst_n) {
    std::vector<Span> spans(dst_n);
    const double scale = static_cast<double>(src_n) / dst_n;
    for (int i = 0; i < dst_n; ++i) {
        const double lo = i * scale;
        const double hi = (i + 1) * scale;
        const int first = static_cast<int>(std::floor(lo));
        const int last = std::min(src_n - 1, static_cast<int>(std::ceil(hi)) - 1);
        spans[i].first = first;
        for (int s = first; s <= last; ++s) {
            const double overlap = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
            spans[i].weights.push_back(std::max(0.0, overlap) / scale);
        }
    }
    return spans;
}

}  // namespace

ImageFrame resize_box(const ImageFrame& src, int width, int height) {
    require(width >= 1 && height >= 1, "resize target must be at least 1x1");
    const auto xs = box_spans(src.width(), width);
    const auto ys = box_spans(src.height(), height);
    ImageFrame out(width, height, 0.0f, src.coord());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc[3] = {0.0, 0.0, 0.0};
            for (std::size_t j = 0; j < ys[y].weights.size(); ++j) {
                const int sy = ys[y].first + static_cast<int>(j);
                for (std::size_t i = 0; i < xs[x].weights.size(); ++i) {
                    const int sx = xs[x].first + static_cast<int>(i);
                    const double wgt = ys[y].weights[j] * xs[x].weights[i];
                    for (int c = 0; c < 3; ++c) acc[c] += wgt * src.at(sx, sy, c);
                }
            }
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c]);
        }
    }
    return out;
}

ImageFrame resize_bilinear(const ImageFrame& src, int width, int height) {
    require(width >= 1 && height >= 1, "resize target must be at least 1x1");
    const double sx = static_cast<double>(src.width()) / width;
    const double sy = static_cast<double>(src.height()) / height;
    ImageFrame out(width, height, 0.0f, src.coord());
    for (int y = 0; y < height; ++y) {
        // Clamp rather than reflect: center-anchored upsampling must not fold back.
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, src.height() - 1.0);
        for (int x = 0; x < width; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, src.width() - 1.0);
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = sample_bilinear(src, fx, fy, c);
        }
    }
    return out;
}

}  // namespace cb
