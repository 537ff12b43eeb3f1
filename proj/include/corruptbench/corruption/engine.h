#pragma once

#include <cstdint>

#include "json.hpp"

#include "corruptbench/core/image.h"
#include "corruptbench/corruption/seed.h"
#include "corruptbench/corruption/spec.h"

namespace cb {

/// Record of what was realized for one corrupted frame.
///
/// `realized` holds only quantities governed by the consistency flags (parameters,
/// pattern seeds, texture placement, trajectory digest), so it is equal across
/// every pair of frames the flags declare consistent. `frame_detail` carries
/// per-frame values that legitimately vary (e.g. motion-blur sample count).
struct Provenance {
    CorruptionKind kind = CorruptionKind::Brightness;
    FrameCoord coord;
    std::uint64_t master_seed = 0;
    std::uint64_t stream_seed = 0;
    Consistency consistency;
    bool consistency_overridden = false;
    nlohmann::json realized = nlohmann::json::object();
    nlohmann::json frame_detail = nlohmann::json::object();

    [[nodiscard]] nlohmann::json to_json() const;
    static Provenance from_json(const nlohmann::json& j);
};

struct CorruptionResult {
    ImageFrame image;
    Provenance provenance;
};

/// Provenance fields common to all kinds.
Provenance make_provenance(const CorruptionSpec& spec, const SeedContext& ctx);

/// Applies one of the image-space kinds; `image` is returned unclipped.
/// Scene kinds (motion blur, snow, rain, fog) are a ContractError here.
CorruptionResult apply_unclipped(const ImageFrame& frame, const CorruptionSpec& spec, const SeedContext& ctx);

/// As apply_unclipped, then clipped to [0,1].
CorruptionResult apply(const ImageFrame& frame, const CorruptionSpec& spec, const SeedContext& ctx);
/// Seed context taken from the spec's master seed and the frame's coordinate.
CorruptionResult apply(const ImageFrame& frame, const CorruptionSpec& spec);

void check_context(const CorruptionSpec& spec, const SeedContext& ctx);

}  // namespace cb
