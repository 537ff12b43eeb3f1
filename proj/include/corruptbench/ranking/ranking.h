#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cb {

/// One model's per-corruption scores (lower is better), in a shared corruption order.
struct ModelScores {
    std::string id;
    std::vector<double> values;
};

/// counts[i][j] = number of corruptions where model i scores strictly below model j.
struct PairwiseMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<int>> counts;

    [[nodiscard]] std::size_t size() const noexcept { return ids.size(); }
    [[nodiscard]] nlohmann::json to_json() const;
    static PairwiseMatrix from_json(const nlohmann::json& j);
};

enum class RankMethod { Average, Median, Schulze };

std::string_view rank_method_name(RankMethod m);
RankMethod rank_method_from_name(std::string_view name);

struct RankOutcome {
    RankMethod method = RankMethod::Schulze;
    std::vector<std::string> order;         ///< best first
    std::optional<std::vector<double>> scores;  ///< aligned with `order`; absent for Schulze
    /// Adjacent pairs of `order` that are tied and were separated by id.
    std::vector<std::pair<std::string, std::string>> ties;

    [[nodiscard]] bool has_ties() const noexcept { return !ties.empty(); }
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws ContractError on ragged tables, duplicate ids or fewer than one corruption.
PairwiseMatrix build_matrix(const std::vector<ModelScores>& tables);

/// Widest-path strengths p[i][j] (edges d[i][j] where d[i][j] > d[j][i], else 0).
std::vector<std::vector<int>> schulze_strengths(const PairwiseMatrix& m);

/// i ranks above j iff p[i][j] > p[j][i]. Models are ordered by the number of others
/// they beat; equal standings are broken by id and reported as ties.
RankOutcome schulze_rank(const PairwiseMatrix& m);

/// Ascending sort by average or median score; equal scores break by id and are reported.
RankOutcome score_rank(const std::vector<ModelScores>& tables, RankMethod method);

}  // namespace cb
