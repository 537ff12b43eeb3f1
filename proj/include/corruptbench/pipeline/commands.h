#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "corruptbench/calibration/calibration.h"
#include "corruptbench/corruption/kind.h"
#include "corruptbench/metrics/report.h"
#include "corruptbench/pipeline/manifest.h"
#include "corruptbench/ranking/ranking.h"

namespace cb {

/// Current version of every file the commands write.
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::vector<CorruptionKind> kinds;
    std::optional<std::filesystem::path> preset;
    std::uint64_t seed = 0;
    std::filesystem::path out;
    int jobs = 1;
};

/// Parses a comma-separated kind list; "all" selects the twenty kinds.
std::vector<CorruptionKind> parse_kind_list(const std::string& text);
std::vector<MetricKind> parse_metric_list(const std::string& text);

/// Missing scene inputs for `kind`, as frame labels. Empty when the manifest suffices.
std::vector<std::string> missing_inputs(const Manifest& manifest, CorruptionKind kind);

/// Writes <out>/<kind>/<scene>/<camera>/<frame>.png plus a .json provenance sidecar
/// per frame and <out>/corrupt_report.json. Returns the report.
nlohmann::json cmd_corrupt(const Manifest& manifest, const RunConfig& config);

struct EvaluateConfig {
    std::string task = "flow";  ///< flow, stereo or sceneflow
    std::string model = "model";
    std::filesystem::path clean;
    std::filesystem::path corrupt;
    std::optional<std::filesystem::path> masks;
    std::optional<std::filesystem::path> ground_truth;
    std::vector<MetricKind> metrics;  ///< task defaults when empty
    std::vector<CorruptionKind> kinds;  ///< every kind directory present when empty
};

std::vector<MetricKind> default_metrics(const std::string& task);

/// Robustness of clean vs corrupted prediction trees. Every *.rsf file under `clean`
/// must exist at <corrupt>/<kind>/<same relative path>. Values pool all evaluated
/// pixels over all frames.
RobustnessReport cmd_evaluate(const EvaluateConfig& config);

struct RankConfig {
    std::vector<std::filesystem::path> reports;
    std::optional<std::filesystem::path> matrix;  ///< pairwise matrix file (Schulze only)
    RankMethod method = RankMethod::Schulze;
    MetricKind metric = MetricKind::Epe;
};

nlohmann::json cmd_rank(const RankConfig& config);

struct CalibrateConfig {
    std::vector<CorruptionKind> kinds;
    std::optional<double> target;
    std::optional<std::filesystem::path> manifest;  ///< shipped synthetic corpus when absent
    std::filesystem::path preset;                   ///< merged into when it exists
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// Calibration samples from the left views of a manifest.
std::vector<CalibrationSample> manifest_samples(const Manifest& manifest);

nlohmann::json cmd_calibrate(const CalibrateConfig& config);

struct SeverityConfig {
    std::vector<CorruptionKind> kinds;
    std::optional<std::filesystem::path> preset;
    std::optional<std::filesystem::path> manifest;
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// Mean SSIM per kind at the preset (or default) parameters.
nlohmann::json cmd_severity(const SeverityConfig& config);

struct SubsampleConfig {
    int width = 0;
    int height = 0;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> frames;  ///< frame ids; also taken from the manifest when given
    std::vector<std::string> hero;
    HeroPolicy policy = HeroPolicy::Subsample;
    std::optional<std::filesystem::path> manifest;
    std::filesystem::path out;
};

/// Writes <out>/<frame id>.rsm per frame and <out>/subsample_report.json.
nlohmann::json cmd_subsample(const SubsampleConfig& config);

/// Writes `text` with a trailing newline, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace cb
