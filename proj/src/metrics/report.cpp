#include "corruptbench/metrics/report.h"

#include <cstdio>
#include <optional>

#include "corruptbench/core/error.h"

namespace cb {

std::vector<double> RobustnessReport::column(MetricKind m) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const Row& r : rows) {
        const auto it = r.values.find(m);
        require(it != r.values.end(), "report row '" + r.corruption + "' lacks metric " + std::string(metric_name(m)));
        out.push_back(it->second);
    }
    return out;
}

Summary RobustnessReport::summary(MetricKind m) const {
    const std::vector<double> col = column(m);
    return summarize(col);
}

nlohmann::json RobustnessReport::to_json() const {
    nlohmann::json j;
    j["version"] = 1;
    j["model"] = model;
    j["task"] = task;
    j["metrics"] = nlohmann::json::array();
    for (MetricKind m : metrics) j["metrics"].push_back(metric_name(m));
    j["rows"] = nlohmann::json::array();
    for (const Row& r : rows) {
        nlohmann::json vals = nlohmann::json::object();
        for (const auto& [m, v] : r.values) vals[std::string(metric_name(m))] = v;
        j["rows"].push_back({{"corruption", r.corruption}, {"values", vals}});
    }
    nlohmann::json summary = nlohmann::json::object();
    if (!rows.empty()) {
        for (MetricKind m : metrics) {
            const Summary s = this->summary(m);
            summary[std::string(metric_name(m))] = {{"average", s.average}, {"median", s.median}};
        }
    }
    j["summary"] = summary;
    if (clean_error) {
        nlohmann::json ce = nlohmann::json::object();
        for (const auto& [m, v] : *clean_error) ce[std::string(metric_name(m))] = v;
        j["clean_error"] = ce;
    }
    j["table"] = format_table();
    return j;
}

RobustnessReport RobustnessReport::from_json(const nlohmann::json& j) {
    try {
        RobustnessReport r;
        r.model = j.at("model").get<std::string>();
        r.task = j.value("task", std::string("flow"));
        for (const auto& m : j.at("metrics")) r.metrics.push_back(metric_from_name(m.get<std::string>()));
        for (const auto& row : j.at("rows")) {
            Row out;
            out.corruption = row.at("corruption").get<std::string>();
            for (const auto& [k, v] : row.at("values").items()) out.values[metric_from_name(k)] = v.get<double>();
            r.rows.push_back(std::move(out));
        }
        if (j.contains("clean_error")) {
            std::map<MetricKind, double> ce;
            for (const auto& [k, v] : j.at("clean_error").items()) ce[metric_from_name(k)] = v.get<double>();
            r.clean_error = std::move(ce);
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("malformed robustness report: ") + e.what());
    }
}

std::string RobustnessReport::format_table() const {
    std::string out;
    char buf[64];
    auto cell = [&](std::optional<double> v) {
        if (v) {
            std::snprintf(buf, sizeof buf, "%10.2f", *v);
        } else {
            std::snprintf(buf, sizeof buf, "%10s", "-");
        }
        out += buf;
    };
    std::snprintf(buf, sizeof buf, "%-16s", "corruption");
    out += buf;
    for (MetricKind m : metrics) {
        std::snprintf(buf, sizeof buf, "%10s", std::string(metric_name(m)).c_str());
        out += buf;
    }
    out += '\n';
    auto line = [&](const std::string& label, auto&& value_of) {
        std::snprintf(buf, sizeof buf, "%-16s", label.c_str());
        out += buf;
        for (MetricKind m : metrics) cell(value_of(m));
        out += '\n';
    };
    auto lookup = [](const std::map<MetricKind, double>& values, MetricKind m) -> std::optional<double> {
        const auto it = values.find(m);
        if (it == values.end()) return std::nullopt;
        return it->second;
    };
    if (clean_error) line("clean_error", [&](MetricKind m) { return lookup(*clean_error, m); });
    for (const Row& r : rows) line(r.corruption, [&](MetricKind m) { return lookup(r.values, m); });
    if (!rows.empty()) {
        line("average", [&](MetricKind m) -> std::optional<double> { return summary(m).average; });
        line("median", [&](MetricKind m) -> std::optional<double> { return summary(m).median; });
    }
    return out;
}

}  // namespace cb
