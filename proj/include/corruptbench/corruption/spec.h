#pragma once

#include <cstdint>
#include <optional>

#include "corruptbench/corruption/kind.h"
#include "corruptbench/corruption/params.h"

namespace cb {

/// A fully specified corruption: kind, parameters, consistency flags and seed.
///
/// The consistency flags always equal the fixed table row for the kind unless
/// the spec is built with `override_consistency`.
class CorruptionSpec {
public:
    explicit CorruptionSpec(CorruptionKind kind, std::uint64_t master_seed = 0);
    explicit CorruptionSpec(CorruptionParams params, std::uint64_t master_seed = 0);

    /// Explicit opt-out of the table flags, e.g. for ablations.
    static CorruptionSpec override_consistency(CorruptionParams params, Consistency consistency,
                                               std::uint64_t master_seed = 0);

    [[nodiscard]] CorruptionKind kind() const noexcept { return kind_; }
    [[nodiscard]] const CorruptionParams& params() const noexcept { return params_; }
    [[nodiscard]] const Consistency& consistency() const noexcept { return consistency_; }
    [[nodiscard]] bool consistency_overridden() const noexcept { return overridden_; }
    [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }

    void set_master_seed(std::uint64_t seed) noexcept { master_seed_ = seed; }

    template <typename P>
    [[nodiscard]] const P& as() const {
        return std::get<P>(params_);
    }

private:
    CorruptionKind kind_;
    CorruptionParams params_;
    Consistency consistency_;
    bool overridden_ = false;
    std::uint64_t master_seed_ = 0;
};

}  // namespace cb
