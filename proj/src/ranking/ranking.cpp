#include "corruptbench/ranking/ranking.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "corruptbench/core/error.h"
#include "corruptbench/metrics/metrics.h"

namespace cb {

std::string_view rank_method_name(RankMethod m) {
    switch (m) {
        case RankMethod::Average: return "average";
        case RankMethod::Median: return "median";
        case RankMethod::Schulze: return "schulze";
    }
    return "unknown";
}

RankMethod rank_method_from_name(std::string_view name) {
    for (RankMethod m : {RankMethod::Average, RankMethod::Median, RankMethod::Schulze}) {
        if (rank_method_name(m) == name) return m;
    }
    throw ContractError("unknown ranking method '" + std::string(name) + "' (expected average, median, schulze)");
}

nlohmann::json PairwiseMatrix::to_json() const { return {{"ids", ids}, {"counts", counts}}; }

PairwiseMatrix PairwiseMatrix::from_json(const nlohmann::json& j) {
    PairwiseMatrix m;
    try {
        m.ids = j.at("ids").get<std::vector<std::string>>();
        m.counts = j.at("counts").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("malformed pairwise matrix: ") + e.what());
    }
    require(m.counts.size() == m.ids.size(), "pairwise matrix row count does not match the ids");
    for (std::size_t i = 0; i < m.counts.size(); ++i) {
        require(m.counts[i].size() == m.ids.size(), "pairwise matrix is not square");
        require(m.counts[i][i] == 0, "pairwise matrix diagonal must be zero");
    }
    return m;
}

nlohmann::json RankOutcome::to_json() const {
    nlohmann::json j{{"method", rank_method_name(method)}, {"order", order}};
    if (scores) j["scores"] = *scores;
    j["ties"] = nlohmann::json::array();
    for (const auto& [a, b] : ties) j["ties"].push_back({a, b});
    return j;
}

namespace {

void check_ids(const std::vector<std::string>& ids) {
    std::set<std::string> seen;
    for (const auto& id : ids) require(seen.insert(id).second, "duplicate model id '" + id + "'");
}

}  // namespace

PairwiseMatrix build_matrix(const std::vector<ModelScores>& tables) {
    require(!tables.empty(), "ranking needs at least one model");
    const std::size_t k = tables.front().values.size();
    require(k >= 1, "ranking needs at least one corruption per model");
    PairwiseMatrix m;
    for (const auto& t : tables) {
        require(t.values.size() == k, "model '" + t.id + "' covers a different number of corruptions");
        m.ids.push_back(t.id);
    }
    check_ids(m.ids);
    const std::size_t n = tables.size();
    m.counts.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t c = 0; c < k; ++c) {
                if (tables[i].values[c] < tables[j].values[c]) ++m.counts[i][j];
            }
        }
    }
    return m;
}

std::vector<std::vector<int>> schulze_strengths(const PairwiseMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<int>> p(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m.counts[i][j] > m.counts[j][i]) p[i][j] = m.counts[i][j];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                p[i][j] = std::max(p[i][j], std::min(p[i][k], p[k][j]));
            }
        }
    }
    return p;
}

RankOutcome schulze_rank(const PairwiseMatrix& m) {
    const std::size_t n = m.size();
    require(n >= 2, "schulze ranking needs at least two models");
    require(m.counts.size() == n, "pairwise matrix row count does not match the ids");
    check_ids(m.ids);
    const auto p = schulze_strengths(m);
    std::vector<int> wins(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && p[i][j] > p[j][i]) ++wins[i];
        }
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (wins[a] != wins[b]) return wins[a] > wins[b];
        return m.ids[a] < m.ids[b];
    });
    RankOutcome out;
    out.method = RankMethod::Schulze;
    for (std::size_t r = 0; r < n; ++r) {
        out.order.push_back(m.ids[idx[r]]);
        if (r > 0 && wins[idx[r]] == wins[idx[r - 1]]) out.ties.emplace_back(m.ids[idx[r - 1]], m.ids[idx[r]]);
    }
    return out;
}

RankOutcome score_rank(const std::vector<ModelScores>& tables, RankMethod method) {
    require(method != RankMethod::Schulze, "score_rank handles average and median only");
    require(!tables.empty(), "ranking needs at least one model");
    const std::size_t k = tables.front().values.size();
    std::vector<std::string> ids;
    std::vector<double> score;
    for (const auto& t : tables) {
        require(t.values.size() == k && k >= 1, "model '" + t.id + "' covers a different number of corruptions");
        ids.push_back(t.id);
        const Summary s = summarize(t.values);
        score.push_back(method == RankMethod::Average ? s.average : s.median);
    }
    check_ids(ids);
    std::vector<std::size_t> idx(ids.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] < score[b];
        return ids[a] < ids[b];
    });
    RankOutcome out;
    out.method = method;
    out.scores.emplace();
    for (std::size_t r = 0; r < idx.size(); ++r) {
        out.order.push_back(ids[idx[r]]);
        out.scores->push_back(score[idx[r]]);
        if (r > 0 && score[idx[r]] == score[idx[r - 1]]) out.ties.emplace_back(ids[idx[r - 1]], ids[idx[r]]);
    }
    return out;
}

}  // namespace cb
