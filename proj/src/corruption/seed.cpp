#include "corruptbench/corruption/seed.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cb {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept { return splitmix64(h ^ v); }

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t derive_stream_seed(const SeedContext& ctx, const Consistency& consistency) {
    std::uint64_t h = splitmix64(ctx.master_seed);
    h = hash_combine(h, fnv1a64(ctx.scene_id));
    h = hash_combine(h, static_cast<std::uint64_t>(ctx.kind) + 1);
    if (!consistency.stereo) h = hash_combine(h, 0x100 + static_cast<std::uint64_t>(ctx.camera));
    if (!consistency.time) h = hash_combine(h, 0x10000 + static_cast<std::uint64_t>(ctx.time_index));
    return h;
}

std::uint64_t derive_substream(std::uint64_t seed, std::uint64_t tag) noexcept {
    return hash_combine(splitmix64(seed), 0xA5A5A5A500000000ULL ^ tag);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::int64_t Rng::poisson(double lambda) { return poisson_quantile(lambda, uniform()); }

std::int64_t poisson_quantile(double lambda, double u) {
    if (!(lambda > 0.0)) return 0;
    if (lambda > 600.0) {
        // exp(-lambda) underflows; use the rounded normal approximation with the
        // standard normal quantile found by bisection on erfc.
        double lo = -10.0;
        double hi = 10.0;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double cdf = 0.5 * std::erfc(-mid / std::numbers::sqrt2);
            (cdf < u ? lo : hi) = mid;
        }
        const double k = std::floor(lambda + std::sqrt(lambda) * 0.5 * (lo + hi) + 0.5);
        return static_cast<std::int64_t>(std::max(0.0, k));
    }
    double p = std::exp(-lambda);
    double cdf = p;
    std::int64_t k = 0;
    while (cdf <= u) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
        if (p == 0.0 && cdf <= u) break;  // tail exhausted by rounding
    }
    return k;
}

}  // namespace cb
