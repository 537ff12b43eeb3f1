#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "corruptbench/metrics/metrics.h"

namespace cb {

/// Per-corruption robustness values of one model, shaped like a results table:
/// one row per corruption, one column per metric, plus Average and Median rows.
struct RobustnessReport {
    struct Row {
        std::string corruption;
        std::map<MetricKind, double> values;
    };

    std::string model;
    std::string task;  ///< flow, stereo or sceneflow
    std::vector<MetricKind> metrics;
    std::vector<Row> rows;
    std::optional<std::map<MetricKind, double>> clean_error;

    /// Values of one metric column in row order.
    [[nodiscard]] std::vector<double> column(MetricKind m) const;
    [[nodiscard]] Summary summary(MetricKind m) const;

    /// Full-precision values plus a two-decimal text table.
    [[nodiscard]] nlohmann::json to_json() const;
    static RobustnessReport from_json(const nlohmann::json& j);
    [[nodiscard]] std::string format_table() const;
};

}  // namespace cb
