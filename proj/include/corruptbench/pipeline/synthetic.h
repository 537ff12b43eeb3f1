#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "corruptbench/core/field.h"
#include "corruptbench/core/image.h"

namespace cb {

/// Ray-cast toy world (ground plane, textured spheres and boxes, sky) with exact
/// depth, disparity and forward optical flow.
struct SyntheticOptions {
    int width = 192;
    int height = 128;
    double focal_x = 166.0;
    double baseline = 0.12;
    double frame_interval = 0.04;
    double camera_speed = 3.0;  ///< m/s forward
    std::uint64_t seed = 1;
};

struct SyntheticView {
    ImageFrame image;
    DepthMap depth;
    PredictionField disparity;  ///< disparity1, 0 on sky
    PredictionField flow;       ///< towards time index + 1 of the same camera
};

class SyntheticWorld {
public:
    explicit SyntheticWorld(const SyntheticOptions& options);

    [[nodiscard]] SyntheticView render(std::int64_t time_index, Camera camera, const std::string& scene_id) const;
    [[nodiscard]] CameraRig rig() const;
    [[nodiscard]] const SyntheticOptions& options() const noexcept { return options_; }

    struct Sphere {
        std::array<double, 3> center;
        double radius;
        std::array<double, 3> velocity;  ///< m/s
        int texture;
    };
    struct Box {
        std::array<double, 3> lo;
        std::array<double, 3> hi;
        int texture;
    };

private:
    SyntheticOptions options_;
    std::vector<Sphere> spheres_;
    std::vector<Box> boxes_;
    std::uint64_t texture_seed_;
};

/// Left views of `count` independently seeded worlds at time 0, with depth and flow.
std::vector<SyntheticView> synthetic_corpus(int count = 10, int width = 384, int height = 256,
                                            std::uint64_t seed = 2024);

/// Writes a stereo sequence tree plus manifest.json under `root` and returns the
/// manifest path. Images are 16-bit PNG; disparity, flow and depth are RSF1.
std::filesystem::path write_synthetic_manifest(const std::filesystem::path& root, int scenes = 2, int frames = 2,
                                               int width = 128, int height = 96, std::uint64_t seed = 7);

}  // namespace cb
