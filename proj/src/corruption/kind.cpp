#include "corruptbench/corruption/kind.h"

#include <string>

#include "corruptbench/core/error.h"

namespace cb {
namespace {

struct KindRow {
    std::string_view name;
    CorruptionGroup group;
    Consistency consistency;
    double ssim;
};

// time / stereo / depth flags and SSIM per kind, in enum order.
constexpr std::array<KindRow, kCorruptionKindCount> kRows = {{
    {"brightness", CorruptionGroup::Color, {true, true, false}, 0.70},
    {"contrast", CorruptionGroup::Color, {true, true, false}, 0.70},
    {"saturate", CorruptionGroup::Color, {true, true, false}, 0.72},
    {"defocus_blur", CorruptionGroup::Blur, {true, true, false}, 0.70},
    {"gaussian_blur", CorruptionGroup::Blur, {true, true, false}, 0.70},
    {"glass_blur", CorruptionGroup::Blur, {true, false, false}, 0.73},
    {"motion_blur", CorruptionGroup::Blur, {true, false, true}, 0.75},
    {"zoom_blur", CorruptionGroup::Blur, {true, true, false}, 0.70},
    {"gaussian_noise", CorruptionGroup::Noise, {false, false, false}, 0.20},
    {"impulse_noise", CorruptionGroup::Noise, {false, false, false}, 0.20},
    {"speckle_noise", CorruptionGroup::Noise, {false, false, false}, 0.20},
    {"shot_noise", CorruptionGroup::Noise, {false, false, false}, 0.22},
    {"pixelate", CorruptionGroup::Quality, {true, true, false}, 0.70},
    {"jpeg", CorruptionGroup::Quality, {true, true, false}, 0.70},
    {"elastic", CorruptionGroup::Quality, {true, false, false}, 0.70},
    {"spatter", CorruptionGroup::Weather, {true, false, false}, 0.72},
    {"frost", CorruptionGroup::Weather, {true, false, false}, 0.73},
    {"snow", CorruptionGroup::Weather, {true, true, true}, 0.70},
    {"rain", CorruptionGroup::Weather, {true, true, true}, 0.70},
    {"fog", CorruptionGroup::Weather, {true, true, true}, 0.71},
}};

const KindRow& row(CorruptionKind kind) { return kRows[static_cast<std::size_t>(kind)]; }

}  // namespace

const std::array<CorruptionKind, kCorruptionKindCount>& all_corruption_kinds() {
    static const auto kinds = [] {
        std::array<CorruptionKind, kCorruptionKindCount> out{};
        for (std::size_t i = 0; i < kCorruptionKindCount; ++i) out[i] = static_cast<CorruptionKind>(i);
        return out;
    }();
    return kinds;
}

std::string_view kind_name(CorruptionKind kind) { return row(kind).name; }

CorruptionKind kind_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kCorruptionKindCount; ++i) {
        if (kRows[i].name == name) return static_cast<CorruptionKind>(i);
    }
    throw ContractError("unknown corruption '" + std::string(name) + "'");
}

CorruptionGroup kind_group(CorruptionKind kind) { return row(kind).group; }

std::string_view group_name(CorruptionGroup group) {
    switch (group) {
        case CorruptionGroup::Color: return "color";
        case CorruptionGroup::Blur: return "blur";
        case CorruptionGroup::Noise: return "noise";
        case CorruptionGroup::Quality: return "quality";
        case CorruptionGroup::Weather: return "weather";
    }
    return "unknown";
}

Consistency table_consistency(CorruptionKind kind) { return row(kind).consistency; }

double reference_ssim(CorruptionKind kind) { return row(kind).ssim; }

bool is_noise(CorruptionKind kind) { return kind_group(kind) == CorruptionGroup::Noise; }

bool needs_scene_inputs(CorruptionKind kind) {
    return kind == CorruptionKind::MotionBlur || kind == CorruptionKind::Snow ||
           kind == CorruptionKind::Rain || kind == CorruptionKind::Fog;
}

}  // namespace cb
