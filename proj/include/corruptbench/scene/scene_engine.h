#pragma once

#include <array>
#include <optional>
#include <vector>

#include "corruptbench/core/field.h"
#include "corruptbench/corruption/engine.h"

namespace cb::scene {

/// Optional per-frame scene inputs for the geometry-aware kinds.
struct SceneInputs {
    const PredictionField* flow = nullptr;  ///< motion blur
    const DepthMap* depth = nullptr;        ///< fog, snow, rain
    const CameraRig* rig = nullptr;         ///< snow, rain
    std::optional<Pose> left_pose;          ///< left camera at this frame
    std::optional<Pose> left_pose_t0;       ///< left camera at time 0 (weather world frame)
};

/// Any of the twenty kinds on a single frame; `image` is clipped. Snow and rain
/// simulate the scene from time 0 up to this frame, which matches the sequence path.
CorruptionResult corrupt_frame(const ImageFrame& frame, const CorruptionSpec& spec, const SeedContext& ctx,
                               const SceneInputs& inputs = {});
CorruptionResult corrupt_frame_unclipped(const ImageFrame& frame, const CorruptionSpec& spec,
                                         const SeedContext& ctx, const SceneInputs& inputs = {});

/// Both views of one time index.
struct StereoFrame {
    const ImageFrame* left = nullptr;
    const ImageFrame* right = nullptr;
    const DepthMap* depth_left = nullptr;
    const DepthMap* depth_right = nullptr;
    std::optional<Pose> left_pose;
};

/// Snow or rain over one scene: one world-space simulation shared by both views
/// and all frames. Frames must be sorted by strictly increasing time index and
/// share one scene id. Returns clipped results as {left, right} per frame.
std::vector<std::array<CorruptionResult, 2>> corrupt_weather(const std::vector<StereoFrame>& frames,
                                                             const CameraRig& rig, const CorruptionSpec& spec);

}  // namespace cb::scene
