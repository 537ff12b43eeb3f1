#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "corruptbench/core/image.h"
#include "corruptbench/corruption/params.h"

namespace cb {

/// Set of frost overlay textures.
class FrostLibrary {
public:
    /// Three deterministic procedural ice textures.
    static FrostLibrary procedural(int side = 384);
    /// Every *.png in `dir`, sorted by file name. Throws IoError when none exist.
    static FrostLibrary from_directory(const std::filesystem::path& dir);

    /// Shared instance for `dir` (procedural when empty), loaded once.
    static std::shared_ptr<const FrostLibrary> cached(const std::string& dir);

    [[nodiscard]] std::size_t size() const noexcept { return textures_.size(); }
    [[nodiscard]] const ImageFrame& texture(std::size_t i) const { return textures_.at(i); }

private:
    std::vector<ImageFrame> textures_;
};

/// Texture choice and crop for one (scene, camera).
struct FrostPlacement {
    std::size_t index = 0;
    double scale = 1.0;     ///< texture pixels per output pixel is 1/scale
    double offset_x = 0.0;  ///< crop origin in scaled-texture pixels
    double offset_y = 0.0;
};

FrostPlacement frost_placement(const FrostLibrary& library, int width, int height, std::uint64_t seed);

/// The cropped, scaled texture at output resolution.
ImageFrame frost_layer(const FrostLibrary& library, const FrostPlacement& placement, int width, int height);

namespace ops {
ImageFrame frost(const ImageFrame& frame, const FrostParams& p, const FrostLibrary& library,
                 const FrostPlacement& placement);
}

}  // namespace cb
