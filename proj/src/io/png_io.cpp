#include "corruptbench/io/png_io.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "corruptbench/core/error.h"
#include "corruptbench/io/field_io.h"

namespace cb {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void png_error_to_buffer(png_structp png, png_const_charp message) {
    auto* buffer = static_cast<std::string*>(png_get_error_ptr(png));
    if (buffer) *buffer = message;
    png_longjmp(png, 1);
}

void png_warning_ignored(png_structp, png_const_charp) {}

}  // namespace

ImageFrame read_image(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw IoError("cannot open image '" + path.string() + "'");

    unsigned char signature[8];
    if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
        throw IoError("'" + path.string() + "' is not a PNG file");
    }

    std::string error_message;
    std::vector<unsigned char> pixels;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    bool bad_channels = false;

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                             png_error_to_buffer, png_warning_ignored);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("malformed PNG '" + path.string() + "': " + error_message);
    }
    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (color_type == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(png);
        bit_depth = 8;
    } else if (color_type != PNG_COLOR_TYPE_RGB) {
        bad_channels = true;
    }
    if (!bad_channels && bit_depth != 8 && bit_depth != 16) bad_channels = true;
    if (bad_channels) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ContractError("'" + path.string() +
                            "' must be an 8- or 16-bit RGB PNG (got color type " +
                            std::to_string(color_type) + ", depth " + std::to_string(bit_depth) + ")");
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    pixels.resize(row_bytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * row_bytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageFrame frame(static_cast<int>(width), static_cast<int>(height));
    auto out = frame.samples();
    const std::size_t n = frame.pixel_count() * ImageFrame::kChannels;
    if (bit_depth == 16) {
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned v = (static_cast<unsigned>(pixels[2 * i]) << 8) | pixels[2 * i + 1];
            out[i] = static_cast<float>(v / 65535.0);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<float>(pixels[i] / 255.0);
    }
    return frame;
}

void write_image(const ImageFrame& frame, const std::filesystem::path& path, int bit_depth) {
    require(bit_depth == 8 || bit_depth == 16, "PNG bit depth must be 8 or 16");
    require(!frame.empty(), "cannot write an empty image");

    const std::size_t n = frame.pixel_count() * ImageFrame::kChannels;
    const int bytes_per_sample = bit_depth / 8;
    const double max_code = bit_depth == 16 ? 65535.0 : 255.0;
    std::vector<unsigned char> pixels(n * bytes_per_sample);
    auto in = frame.samples();
    for (std::size_t i = 0; i < n; ++i) {
        const float v = in[i] >= 0.0f ? std::min(in[i], 1.0f) : 0.0f;
        const auto code = static_cast<unsigned>(std::lround(v * max_code));
        if (bit_depth == 16) {
            pixels[2 * i] = static_cast<unsigned char>(code >> 8);
            pixels[2 * i + 1] = static_cast<unsigned char>(code & 0xFF);
        } else {
            pixels[i] = static_cast<unsigned char>(code);
        }
    }
    const std::size_t row_bytes = static_cast<std::size_t>(frame.width()) * 3 * bytes_per_sample;
    std::vector<png_bytep> rows(frame.height());
    for (int y = 0; y < frame.height(); ++y) rows[y] = pixels.data() + y * row_bytes;

    ensure_parent(path);
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw IoError("cannot create image '" + path.string() + "'");

    std::string error_message;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                              png_error_to_buffer, png_warning_ignored);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed writing PNG '" + path.string() + "': " + error_message);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(frame.width()),
                 static_cast<png_uint_32>(frame.height()), bit_depth, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(file.get()) != 0) throw IoError("failed flushing '" + path.string() + "'");
}

}  // namespace cb
