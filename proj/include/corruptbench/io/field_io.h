#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "corruptbench/core/field.h"
#include "corruptbench/core/mask.h"

namespace cb {

// RSF1: "RSF1", u32 width, u32 height, u32 arity, then width*height*arity
// float32, all little-endian, row-major.

/// Serializes a field to RSF1 bytes.
std::vector<std::uint8_t> encode_field(const PredictionField& field);

/// Parses RSF1 bytes. With `expected`, a differing arity is a kind-mismatch error;
/// without it arity 2 yields Flow and arity 1 yields Disparity1.
PredictionField decode_field(const std::vector<std::uint8_t>& bytes,
                             std::optional<FieldKind> expected = std::nullopt);

PredictionField read_field(const std::filesystem::path& path,
                           std::optional<FieldKind> expected = std::nullopt);
void write_field(const PredictionField& field, const std::filesystem::path& path);

/// Depth maps are stored as arity-1 RSF1 in meters; invalid pixels as +inf.
DepthMap read_depth(const std::filesystem::path& path);
void write_depth(const DepthMap& depth, const std::filesystem::path& path);

// RSM1: "RSM1", u32 width, u32 height, then ceil(w*h/8) bytes, row-major,
// least significant bit first.

std::vector<std::uint8_t> encode_mask(const PixelMask& mask);
PixelMask decode_mask(const std::vector<std::uint8_t>& bytes);
PixelMask read_mask(const std::filesystem::path& path);
void write_mask(const PixelMask& mask, const std::filesystem::path& path);

/// Creates the parent directories of `path` (safe to call concurrently).
void ensure_parent(const std::filesystem::path& path);

/// Whole-file helpers shared by the binary formats. Writing creates parent directories.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace cb
