#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "corruptbench/core/field.h"
#include "corruptbench/core/image.h"
#include "corruptbench/corruption/spec.h"

namespace cb {

/// Scalar severity knob. theta = 0 is the identity (jpeg: quality 100), theta = 1
/// reproduces `base` (the default parameters unless given), and SSIM falls as theta grows.
struct SeverityKnob {
    CorruptionKind kind;
    double theta_max;
};

SeverityKnob severity_knob(CorruptionKind kind);

/// Parameters for `theta` on `kind`'s knob, scaled from `base`.
CorruptionParams knob_params(CorruptionKind kind, double theta);
CorruptionParams knob_params(const CorruptionParams& base, double theta);

struct CalibrationTarget {
    double ssim = 0.7;
    double tolerance = 0.02;

    /// 0.20 for the four noise kinds, 0.70 otherwise.
    static CalibrationTarget for_kind(CorruptionKind kind);
};

/// One clean frame with the scene inputs the geometry-aware kinds need.
struct CalibrationSample {
    ImageFrame image;
    std::optional<PredictionField> flow;
    std::optional<DepthMap> depth;
};

struct CalibrationResult {
    CorruptionKind kind;
    double theta = 0.0;
    double ssim = 1.0;
    int iterations = 0;
    bool converged = false;
    double lo = 0.0;  ///< final bracket
    double hi = 0.0;
    CorruptionParams params;
};

struct CalibrationOptions {
    std::uint64_t seed = 0;
    int jobs = 1;
    int max_iterations = 40;
    std::optional<CorruptionParams> base;  ///< defaults when empty
    std::optional<double> theta_max;       ///< knob default when empty
};

/// Mean SSIM of clean vs corrupted over the samples.
double mean_ssim(CorruptionKind kind, const CorruptionParams& params, const std::vector<CalibrationSample>& samples,
                 const CameraRig& rig, std::uint64_t seed = 0, int jobs = 1);

/// Bisection on theta over [0, theta_max] until the mean SSIM is within tolerance
/// or max_iterations evaluations were spent. Throws ContractError when the target
/// cannot be bracketed, reporting the SSIM range reached.
CalibrationResult calibrate(CorruptionKind kind, const std::vector<CalibrationSample>& samples, const CameraRig& rig,
                            const CalibrationTarget& target, const CalibrationOptions& options = {});

struct SeverityRow {
    CorruptionKind kind;
    double mean_ssim = 0.0;
    double reference_ssim = 0.0;
    std::size_t frames = 0;
};

/// Mean SSIM per spec, one row per spec.
std::vector<SeverityRow> verify_severity(const std::vector<CorruptionSpec>& specs,
                                         const std::vector<CalibrationSample>& samples, const CameraRig& rig,
                                         int jobs = 1);

/// Mean SSIM per kind from already corrupted pairs.
std::vector<SeverityRow> verify_severity(const std::map<CorruptionKind, std::vector<std::pair<ImageFrame, ImageFrame>>>& pairs);

/// Severity preset files: {"version": 1, "presets": {kind: {"params": {...}, "theta", "ssim"}}}.
struct SeverityPreset {
    std::map<CorruptionKind, CorruptionParams> params;
    std::map<CorruptionKind, CalibrationResult> provenance;

    void add(const CalibrationResult& r);
    [[nodiscard]] nlohmann::json to_json() const;
    static SeverityPreset from_json(const nlohmann::json& j);
    static SeverityPreset load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
    /// Merges into an existing file when it exists.
    void merge_into(const std::filesystem::path& path) const;
};

/// Samples from the shipped synthetic corpus, with the matching rig.
std::vector<CalibrationSample> synthetic_calibration_samples(int count = 10, CameraRig* rig = nullptr,
                                                            int width = 384, int height = 256);

}  // namespace cb
