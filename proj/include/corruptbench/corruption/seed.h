#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "corruptbench/core/image.h"
#include "corruptbench/corruption/kind.h"

namespace cb {

/// SplitMix64 finalizer applied to x + golden ratio increment.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
/// splitmix64(h ^ v): order-sensitive mixing of one more value into a hash.
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept;
/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Everything that may enter the random stream of one corrupted frame.
struct SeedContext {
    std::uint64_t master_seed = 0;
    std::string scene_id;
    Camera camera = Camera::Left;
    std::int64_t time_index = 0;
    CorruptionKind kind = CorruptionKind::Brightness;

    static SeedContext for_frame(std::uint64_t master_seed, const FrameCoord& coord, CorruptionKind kind) {
        return {master_seed, coord.scene_id, coord.camera, coord.time_index, kind};
    }
};

/// Stream seed for a frame:
///
///   h = splitmix64(master_seed)
///   h = hash_combine(h, fnv1a64(scene_id))
///   h = hash_combine(h, kind_index + 1)
///   if not stereo-consistent: h = hash_combine(h, 0x100 + camera)      (left 0, right 1)
///   if not time-consistent:   h = hash_combine(h, 0x10000 + time_index) (two's complement u64)
///
/// Consistent kinds therefore share their stream across the omitted coordinates.
std::uint64_t derive_stream_seed(const SeedContext& ctx, const Consistency& consistency);

/// Independent sub-stream of `seed` for a named purpose (e.g. keyframe k).
std::uint64_t derive_substream(std::uint64_t seed, std::uint64_t tag) noexcept;

/// Deterministic sampler over std::mt19937_64. The distributions are written out
/// here so that streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi] (inclusive).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    /// Standard normal via Box-Muller; the second variate is cached.
    double normal();
    /// Poisson(lambda) by inversion of one uniform; lambda >= 0.
    std::int64_t poisson(double lambda);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Poisson quantile: smallest k with CDF(k) > u. Exposed for testing.
std::int64_t poisson_quantile(double lambda, double u);

}  // namespace cb
