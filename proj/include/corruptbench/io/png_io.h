#pragma once

#include <filesystem>

#include "corruptbench/core/image.h"

namespace cb {

/// Reads an 8- or 16-bit RGB PNG (palette images are expanded to RGB) and
/// scales samples to [0,1] by 1/255 or 1/65535.
ImageFrame read_image(const std::filesystem::path& path);

/// Writes an RGB PNG at 8 or 16 bits per sample. Samples are clipped to [0,1]
/// and rounded to the nearest code. Output bytes depend only on the pixels.
void write_image(const ImageFrame& frame, const std::filesystem::path& path, int bit_depth = 16);

}  // namespace cb
