#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace cb {

/// The twenty corruptions, in the column order of the published overview table.
enum class CorruptionKind : std::uint8_t {
    Brightness,
    Contrast,
    Saturate,
    DefocusBlur,
    GaussianBlur,
    GlassBlur,
    MotionBlur,
    ZoomBlur,
    GaussianNoise,
    ImpulseNoise,
    SpeckleNoise,
    ShotNoise,
    Pixelate,
    Jpeg,
    Elastic,
    Spatter,
    Frost,
    Snow,
    Rain,
    Fog,
};

inline constexpr std::size_t kCorruptionKindCount = 20;

enum class CorruptionGroup : std::uint8_t { Color, Blur, Noise, Quality, Weather };

/// Which realized quantities are shared across time (one camera), across the two
/// cameras, and whether the effect is embedded in scene depth.
struct Consistency {
    bool time = false;
    bool stereo = false;
    bool depth = false;

    friend bool operator==(const Consistency&, const Consistency&) = default;
};

const std::array<CorruptionKind, kCorruptionKindCount>& all_corruption_kinds();

std::string_view kind_name(CorruptionKind kind);
/// Accepts the snake_case names returned by kind_name(); throws ContractError otherwise.
CorruptionKind kind_from_name(std::string_view name);

CorruptionGroup kind_group(CorruptionKind kind);
std::string_view group_name(CorruptionGroup group);

/// The fixed consistency row for `kind`.
Consistency table_consistency(CorruptionKind kind);

/// SSIM the reference dataset reports for `kind` (informational, corpus-specific).
double reference_ssim(CorruptionKind kind);

bool is_noise(CorruptionKind kind);

/// Kinds that need scene geometry or motion (flow or depth inputs).
bool needs_scene_inputs(CorruptionKind kind);

}  // namespace cb
