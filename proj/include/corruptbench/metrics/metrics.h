#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corruptbench/core/field.h"
#include "corruptbench/core/image.h"
#include "corruptbench/core/mask.h"

namespace cb {

enum class MetricKind : std::uint8_t { Epe, OnePx, Fl, Abs, D1, D2 };

std::string_view metric_name(MetricKind m);
/// "epe", "1px", "fl", "abs", "d1", "d2" (case-insensitive).
MetricKind metric_from_name(std::string_view name);

/// Whether `m` is defined on fields of `kind`.
bool metric_applies(MetricKind m, FieldKind kind);

/// Distance of `other` from `reference` under `m` over the set pixels of `mask`:
///   EPE   mean |d|
///   1px   100 * share of |d| > 1
///   Abs   mean |d| on disparities
///   Fl/D1/D2  100 * share of |d| > 3 and |d| > 0.05 |reference|
/// where d = other - reference per pixel. Sums run in double, in pixel order.
double field_metric(const PredictionField& reference, const PredictionField& other, const PixelMask& mask,
                    MetricKind m);

/// Corruption robustness: the clean prediction is the reference.
double robustness(const PredictionField& clean, const PredictionField& corrupt, const PixelMask& mask,
                  MetricKind m);
/// Accuracy against ground truth, same machinery with `gt` as the reference.
double accuracy(const PredictionField& pred, const PredictionField& gt, const PixelMask& mask, MetricKind m);

struct Summary {
    double average = 0.0;
    double median = 0.0;
};

/// Mean and median (mean of the middle two for even counts). Throws on empty input.
Summary summarize(std::span<const double> values);

enum class HeroPolicy : std::uint8_t { Subsample, KeepFull };

/// Deterministic stratified mask. Regular frames keep K = max(1, llround(N * fraction))
/// pixels, one uniformly chosen in each of K equal row-major strata. Hero frames
/// under HeroPolicy::Subsample are first sampled at t * fraction with
/// t = clamp(floor(1 / fraction), 1, 20), then every t-th selected pixel of a
/// seeded permutation is kept. HeroPolicy::KeepFull keeps hero frames whole.
PixelMask make_mask(int width, int height, double fraction, std::uint64_t seed, std::string_view frame_id,
                    bool hero = false, HeroPolicy policy = HeroPolicy::Subsample);

struct SubsampleComparison {
    double r_sub = 0.0;
    double r_full = 0.0;
    double relative_gap = 0.0;  ///< |r_sub - r_full| / max(r_full, 1e-12)
    bool flagged = false;       ///< relative gap above 2%
};

SubsampleComparison robustness_subsampled_vs_full(const PredictionField& clean, const PredictionField& corrupt,
                                                  const PixelMask& mask, MetricKind m = MetricKind::Epe);

struct ExclusionPoint {
    double threshold = 0.0;
    double excluded_percent = 0.0;  ///< of the evaluated pixels
    std::optional<double> epe;      ///< empty when nothing is left to evaluate
};

/// Per-pixel d = max over channels |I - I^c|; a pixel is excluded iff d > 1 - threshold / 100.
/// R^c_EPE is recomputed on the remaining pixels of `mask` (all pixels when absent).
std::vector<ExclusionPoint> exclusion_analysis(const ImageFrame& clean_img, const ImageFrame& corrupt_img,
                                               const PredictionField& clean_pred,
                                               const PredictionField& corrupt_pred,
                                               std::span<const double> thresholds,
                                               const std::optional<PixelMask>& mask = std::nullopt);

}  // namespace cb
