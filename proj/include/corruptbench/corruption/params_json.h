#pragma once

#include "json.hpp"

#include "corruptbench/corruption/params.h"

namespace cb {

nlohmann::json params_to_json(const CorruptionParams& params);

/// Fields absent from `j` keep their defaults; unknown fields are a ContractError.
CorruptionParams params_from_json(CorruptionKind kind, const nlohmann::json& j);

}  // namespace cb
