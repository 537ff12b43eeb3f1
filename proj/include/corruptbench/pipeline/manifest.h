#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "corruptbench/core/field.h"
#include "corruptbench/core/image.h"

namespace cb {

/// Files of one camera at one time index. Paths are absolute after loading.
struct ViewEntry {
    std::filesystem::path image;
    std::optional<std::filesystem::path> disparity;
    std::optional<std::filesystem::path> flow;
    std::optional<std::filesystem::path> depth;
    std::optional<Pose> pose;
};

struct FrameEntry {
    std::int64_t t = 0;
    ViewEntry left;
    ViewEntry right;

    [[nodiscard]] const ViewEntry& view(Camera c) const { return c == Camera::Left ? left : right; }
};

struct SceneEntry {
    std::string id;
    std::vector<FrameEntry> frames;  ///< sorted by t
};

/// Stereo video manifest (JSON). Relative paths resolve against the manifest's directory.
struct Manifest {
    CameraRig rig;
    std::optional<std::filesystem::path> frost_dir;
    std::vector<SceneEntry> scenes;

    static Manifest parse(const nlohmann::json& j, const std::filesystem::path& base_dir);
    static Manifest load(const std::filesystem::path& path);

    /// Throws IoError listing every referenced file that does not exist.
    void check_files() const;
    /// Number of views (images) over all scenes, both cameras counted.
    [[nodiscard]] std::size_t frame_count() const;
};

/// "scene t=3 left" style label used in error messages.
std::string frame_label(const std::string& scene, std::int64_t t, Camera camera);

/// Zero-padded frame file stem, e.g. 0003.
std::string frame_stem(std::int64_t t);

/// Image of one view with its FrameCoord attached.
ImageFrame load_view_image(const SceneEntry& scene, const FrameEntry& frame, Camera camera);

/// Depth from the depth file, else from the disparity file; empty when neither exists.
std::optional<DepthMap> load_view_depth(const ViewEntry& view, const CameraRig& rig);

}  // namespace cb
