#include "corruptbench/metrics/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "corruptbench/core/error.h"
#include "corruptbench/corruption/seed.h"

namespace cb {

std::string_view metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::Epe: return "epe";
        case MetricKind::OnePx: return "1px";
        case MetricKind::Fl: return "fl";
        case MetricKind::Abs: return "abs";
        case MetricKind::D1: return "d1";
        case MetricKind::D2: return "d2";
    }
    return "unknown";
}

MetricKind metric_from_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (MetricKind m : {MetricKind::Epe, MetricKind::OnePx, MetricKind::Fl, MetricKind::Abs, MetricKind::D1,
                         MetricKind::D2}) {
        if (metric_name(m) == lower) return m;
    }
    throw ContractError("unknown metric '" + std::string(name) + "' (expected epe, 1px, fl, abs, d1, d2)");
}

bool metric_applies(MetricKind m, FieldKind kind) {
    switch (m) {
        case MetricKind::Epe:
        case MetricKind::Fl: return kind == FieldKind::Flow;
        case MetricKind::OnePx: return true;
        case MetricKind::Abs: return kind != FieldKind::Flow;
        case MetricKind::D1: return kind == FieldKind::Disparity1;
        case MetricKind::D2: return kind == FieldKind::Disparity2;
    }
    return false;
}

double field_metric(const PredictionField& reference, const PredictionField& other, const PixelMask& mask,
                    MetricKind m) {
    require(reference.width() == other.width() && reference.height() == other.height(),
            "prediction fields differ in size");
    require(reference.kind() == other.kind(), "prediction fields differ in kind");
    require(mask.width() == reference.width() && mask.height() == reference.height(),
            "mask size does not match the prediction fields");
    require(metric_applies(m, reference.kind()), "metric " + std::string(metric_name(m)) +
                                                     " is not defined for " +
                                                     std::string(field_kind_name(reference.kind())) + " fields");
    const int arity = reference.arity();
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < reference.pixel_count(); ++i) {
        if (!mask.test(i)) continue;
        ++count;
        double err = 0.0;
        double ref = 0.0;
        if (arity == 2) {
            const double du = static_cast<double>(other.value(i, 0)) - reference.value(i, 0);
            const double dv = static_cast<double>(other.value(i, 1)) - reference.value(i, 1);
            err = std::sqrt(du * du + dv * dv);
            const double ru = reference.value(i, 0);
            const double rv = reference.value(i, 1);
            ref = std::sqrt(ru * ru + rv * rv);
        } else {
            err = std::abs(static_cast<double>(other.value(i)) - reference.value(i));
            ref = std::abs(static_cast<double>(reference.value(i)));
        }
        switch (m) {
            case MetricKind::Epe:
            case MetricKind::Abs: sum += err; break;
            case MetricKind::OnePx: sum += err > 1.0 ? 1.0 : 0.0; break;
            case MetricKind::Fl:
            case MetricKind::D1:
            case MetricKind::D2: sum += (err > 3.0 && err > 0.05 * ref) ? 1.0 : 0.0; break;
        }
    }
    require(count > 0, "evaluation mask is empty");
    const double mean = sum / static_cast<double>(count);
    return (m == MetricKind::Epe || m == MetricKind::Abs) ? mean : 100.0 * mean;
}

double robustness(const PredictionField& clean, const PredictionField& corrupt, const PixelMask& mask,
                  MetricKind m) {
    return field_metric(clean, corrupt, mask, m);
}

double accuracy(const PredictionField& pred, const PredictionField& gt, const PixelMask& mask, MetricKind m) {
    return field_metric(gt, pred, mask, m);
}

Summary summarize(std::span<const double> values) {
    require(!values.empty(), "summarize needs at least one value");
    Summary s;
    s.average = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

namespace {

// One uniformly chosen index in each of k equal row-major strata of [0, n).
// Pixels are visited tile by tile (square tiles of about 1/fraction pixels,
// row-major inside each tile); strata are equal runs of that order.
struct TileOrder {
    std::size_t width, height, side;

    std::size_t pixel(std::size_t r) const {
        const std::size_t band = r / (side * width);
        const std::size_t offset = r - band * side * width;
        const std::size_t band_h = std::min(side, height - band * side);
        const std::size_t tile = offset / (band_h * side);
        const std::size_t inner = offset - tile * band_h * side;
        const std::size_t tile_w = std::min(side, width - tile * side);
        return (band * side + inner / tile_w) * width + tile * side + inner % tile_w;
    }
};

std::vector<std::size_t> stratified(const TileOrder& order, std::size_t k, Rng& rng) {
    const std::size_t n = order.width * order.height;
    std::vector<std::size_t> picks;
    picks.reserve(k);
    for (std::size_t s = 0; s < k; ++s) {
        const std::size_t lo = s * n / k;
        const std::size_t hi = (s + 1) * n / k;
        picks.push_back(order.pixel(static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi) - 1))));
    }
    return picks;
}

}  // namespace

PixelMask make_mask(int width, int height, double fraction, std::uint64_t seed, std::string_view frame_id,
                    bool hero, HeroPolicy policy) {
    require(fraction > 0.0 && fraction <= 1.0, "mask fraction must be in (0, 1]");
    require(width >= 1 && height >= 1, "mask dimensions must be at least 1x1");
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (fraction == 1.0 || (hero && policy == HeroPolicy::KeepFull)) {
        return PixelMask(width, height, true);
    }
    Rng rng(hash_combine(splitmix64(seed), fnv1a64(frame_id)));
    const auto side = static_cast<std::size_t>(std::max(1.0, std::round(std::sqrt(1.0 / fraction))));
    const TileOrder order{static_cast<std::size_t>(width), static_cast<std::size_t>(height), side};
    std::vector<std::size_t> picks;
    if (!hero) {
        const auto k = static_cast<std::size_t>(std::max<long long>(1, std::llround(static_cast<double>(n) * fraction)));
        picks = stratified(order, std::min(k, n), rng);
    } else {
        const int t = std::clamp(static_cast<int>(std::floor(1.0 / fraction)), 1, 20);
        const double base = std::min(1.0, fraction * t);
        const auto k = static_cast<std::size_t>(std::max<long long>(1, std::llround(static_cast<double>(n) * base)));
        picks = stratified(order, std::min(k, n), rng);
        // Seeded Fisher-Yates order, then every t-th pick.
        for (std::size_t i = picks.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(picks[i - 1], picks[j]);
        }
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < picks.size(); i += static_cast<std::size_t>(t)) kept.push_back(picks[i]);
        picks = std::move(kept);
    }
    std::vector<bool> bits(n, false);
    for (std::size_t p : picks) bits[p] = true;
    return PixelMask(width, height, std::move(bits), fraction);
}

SubsampleComparison robustness_subsampled_vs_full(const PredictionField& clean, const PredictionField& corrupt,
                                                  const PixelMask& mask, MetricKind m) {
    SubsampleComparison c;
    c.r_sub = robustness(clean, corrupt, mask, m);
    c.r_full = robustness(clean, corrupt, PixelMask::full(clean.width(), clean.height()), m);
    c.relative_gap = std::abs(c.r_sub - c.r_full) / std::max(c.r_full, 1e-12);
    c.flagged = c.relative_gap > 0.02;
    return c;
}

std::vector<ExclusionPoint> exclusion_analysis(const ImageFrame& clean_img, const ImageFrame& corrupt_img,
                                               const PredictionField& clean_pred,
                                               const PredictionField& corrupt_pred,
                                               std::span<const double> thresholds,
                                               const std::optional<PixelMask>& mask) {
    require(clean_img.same_shape(corrupt_img), "clean and corrupted images differ in size");
    require(clean_pred.width() == clean_img.width() && clean_pred.height() == clean_img.height(),
            "predictions do not match the image size");
    const PixelMask base = mask ? *mask : PixelMask::full(clean_img.width(), clean_img.height());
    require(base.width() == clean_img.width() && base.height() == clean_img.height(),
            "mask size does not match the images");

    std::vector<double> diff(clean_img.pixel_count(), 0.0);
    const auto a = clean_img.samples();
    const auto b = corrupt_img.samples();
    for (std::size_t p = 0; p < diff.size(); ++p) {
        for (int c = 0; c < 3; ++c) {
            diff[p] = std::max(diff[p], std::abs(static_cast<double>(a[p * 3 + c]) - b[p * 3 + c]));
        }
    }
    const std::size_t total = base.popcount();
    require(total > 0, "evaluation mask is empty");

    std::vector<ExclusionPoint> curve;
    for (double thr : thresholds) {
        require(thr >= 0.0 && thr <= 100.0, "exclusion threshold must be in [0, 100]");
        const double cut = 1.0 - thr / 100.0;
        PixelMask keep = base;
        std::size_t excluded = 0;
        for (std::size_t p = 0; p < diff.size(); ++p) {
            if (base.test(p) && diff[p] > cut) {
                keep.set(p, false);
                ++excluded;
            }
        }
        ExclusionPoint pt;
        pt.threshold = thr;
        pt.excluded_percent = 100.0 * static_cast<double>(excluded) / static_cast<double>(total);
        if (excluded < total) pt.epe = robustness(clean_pred, corrupt_pred, keep, MetricKind::Epe);
        curve.push_back(pt);
    }
    return curve;
}

}  // namespace cb
