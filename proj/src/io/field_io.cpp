#include "corruptbench/io/field_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "corruptbench/core/error.h"

namespace cb {
namespace {

constexpr char kFieldMagic[4] = {'R', 'S', 'F', '1'};
constexpr char kMaskMagic[4] = {'R', 'S', 'M', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t offset) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[offset + i]) << (8 * i);
    return v;
}

void put_f32(std::vector<std::uint8_t>& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

float get_f32(const std::vector<std::uint8_t>& in, std::size_t offset) {
    return std::bit_cast<float>(get_u32(in, offset));
}

bool has_magic(const std::vector<std::uint8_t>& bytes, const char (&magic)[4]) {
    return bytes.size() >= 4 && std::memcmp(bytes.data(), magic, 4) == 0;
}

}  // namespace

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void ensure_parent(const std::filesystem::path& path) {
    if (!path.has_parent_path()) return;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::uint8_t> encode_field(const PredictionField& field) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + field.data().size() * 4);
    out.insert(out.end(), kFieldMagic, kFieldMagic + 4);
    put_u32(out, static_cast<std::uint32_t>(field.width()));
    put_u32(out, static_cast<std::uint32_t>(field.height()));
    put_u32(out, static_cast<std::uint32_t>(field.arity()));
    for (float v : field.data()) put_f32(out, v);
    return out;
}

PredictionField decode_field(const std::vector<std::uint8_t>& bytes, std::optional<FieldKind> expected) {
    if (!has_magic(bytes, kFieldMagic)) throw IoError("field: bad magic (expected RSF1)");
    if (bytes.size() < 16) throw IoError("field: truncated header");
    const std::uint32_t w = get_u32(bytes, 4);
    const std::uint32_t h = get_u32(bytes, 8);
    const std::uint32_t arity = get_u32(bytes, 12);
    if (w == 0 || h == 0) throw IoError("field: zero dimension in header");
    if (arity != 1 && arity != 2) throw IoError("field: arity must be 1 or 2, got " + std::to_string(arity));
    const std::uint64_t count = static_cast<std::uint64_t>(w) * h * arity;
    if (bytes.size() - 16 != count * 4) {
        throw IoError("field: size mismatch, header says " + std::to_string(count) + " floats, body has " +
                      std::to_string((bytes.size() - 16) / 4.0));
    }
    FieldKind kind = arity == 2 ? FieldKind::Flow : FieldKind::Disparity1;
    if (expected) {
        if (arity_of(*expected) != static_cast<int>(arity)) {
            throw ContractError("field: kind mismatch, expected " + std::string(field_kind_name(*expected)) +
                                " (arity " + std::to_string(arity_of(*expected)) + ") but file has arity " +
                                std::to_string(arity));
        }
        kind = *expected;
    }
    std::vector<float> data(count);
    for (std::uint64_t i = 0; i < count; ++i) data[i] = get_f32(bytes, 16 + 4 * i);
    return PredictionField(static_cast<int>(w), static_cast<int>(h), kind, std::move(data));
}

PredictionField read_field(const std::filesystem::path& path, std::optional<FieldKind> expected) {
    try {
        return decode_field(read_file_bytes(path), expected);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    } catch (const ContractError& e) {
        throw ContractError(path.string() + ": " + e.what());
    }
}

void write_field(const PredictionField& field, const std::filesystem::path& path) {
    write_file_bytes(path, encode_field(field));
}

DepthMap read_depth(const std::filesystem::path& path) {
    const PredictionField f = read_field(path, FieldKind::Disparity1);
    DepthMap depth(f.width(), f.height());
    for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) {
            const float z = f.at(x, y);
            depth.at(x, y) = DepthMap::is_valid(z) ? z : DepthMap::kInvalid;
        }
    }
    return depth;
}

void write_depth(const DepthMap& depth, const std::filesystem::path& path) {
    std::vector<float> data(depth.data().begin(), depth.data().end());
    write_field(PredictionField(depth.width(), depth.height(), FieldKind::Disparity1, std::move(data)), path);
}

std::vector<std::uint8_t> encode_mask(const PixelMask& mask) {
    std::vector<std::uint8_t> out;
    const std::size_t n = mask.pixel_count();
    out.reserve(12 + (n + 7) / 8);
    out.insert(out.end(), kMaskMagic, kMaskMagic + 4);
    put_u32(out, static_cast<std::uint32_t>(mask.width()));
    put_u32(out, static_cast<std::uint32_t>(mask.height()));
    std::vector<std::uint8_t> body((n + 7) / 8, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask.test(i)) body[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

PixelMask decode_mask(const std::vector<std::uint8_t>& bytes) {
    if (!has_magic(bytes, kMaskMagic)) throw IoError("mask: bad magic (expected RSM1)");
    if (bytes.size() < 12) throw IoError("mask: truncated header");
    const std::uint32_t w = get_u32(bytes, 4);
    const std::uint32_t h = get_u32(bytes, 8);
    if (w == 0 || h == 0) throw IoError("mask: zero dimension in header");
    const std::uint64_t n = static_cast<std::uint64_t>(w) * h;
    if (bytes.size() - 12 != (n + 7) / 8) {
        throw IoError("mask: size mismatch, expected " + std::to_string((n + 7) / 8) + " body bytes, got " +
                      std::to_string(bytes.size() - 12));
    }
    std::vector<bool> bits(n);
    std::size_t kept = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        bits[i] = (bytes[12 + i / 8] >> (i % 8)) & 1u;
        kept += bits[i] ? 1 : 0;
    }
    return PixelMask(static_cast<int>(w), static_cast<int>(h), std::move(bits),
                     static_cast<double>(kept) / static_cast<double>(n));
}

PixelMask read_mask(const std::filesystem::path& path) {
    try {
        return decode_mask(read_file_bytes(path));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_mask(const PixelMask& mask, const std::filesystem::path& path) {
    write_file_bytes(path, encode_mask(mask));
}

}  // namespace cb
