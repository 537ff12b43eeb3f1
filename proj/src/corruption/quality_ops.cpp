#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <jpeglib.h>

#include "corruptbench/core/error.h"
#include "corruptbench/core/filter.h"
#include "corruptbench/corruption/operators.h"
#include "corruptbench/corruption/seed.h"

namespace cb::ops {

ImageFrame pixelate(const ImageFrame& frame, const PixelateParams& p) {
    const int w = std::max(1, static_cast<int>(std::lround(frame.width() * p.fraction)));
    const int h = std::max(1, static_cast<int>(std::lround(frame.height() * p.fraction)));
    if (w == frame.width() && h == frame.height()) return frame;
    ImageFrame out = resize_bilinear(resize_box(frame, w, h), frame.width(), frame.height());
    out.set_coord(frame.coord());
    return out;
}

namespace {

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

std::uint8_t to_code(float v) {
    const float c = v >= 0.0f ? std::min(v, 1.0f) : 0.0f;
    return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

}  // namespace

std::vector<std::uint8_t> jpeg_encode(const ImageFrame& frame, int quality) {
    require(quality >= 1 && quality <= 100, "jpeg quality must be in 1..100");
    std::vector<std::uint8_t> rgb(frame.samples().size());
    const auto src = frame.samples();
    for (std::size_t i = 0; i < rgb.size(); ++i) rgb[i] = to_code(src[i]);

    jpeg_compress_struct cinfo{};
    JpegErrorManager jerr{};
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = on_jpeg_error;
    unsigned char* buffer = nullptr;
    unsigned long size = 0;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_compress(&cinfo);
        std::free(buffer);
        throw IoError(std::string("jpeg encode failed: ") + jerr.message);
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = static_cast<JDIMENSION>(frame.width());
    cinfo.image_height = static_cast<JDIMENSION>(frame.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    cinfo.dct_method = JDCT_ISLOW;
    cinfo.optimize_coding = FALSE;
    cinfo.comp_info[0].h_samp_factor = 2;
    cinfo.comp_info[0].v_samp_factor = 2;
    for (int c = 1; c < 3; ++c) {
        cinfo.comp_info[c].h_samp_factor = 1;
        cinfo.comp_info[c].v_samp_factor = 1;
    }
    jpeg_start_compress(&cinfo, TRUE);
    const std::size_t stride = static_cast<std::size_t>(frame.width()) * 3;
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = rgb.data() + cinfo.next_scanline * stride;
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    std::vector<std::uint8_t> out(buffer, buffer + size);
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    return out;
}

ImageFrame jpeg_decode(const std::vector<std::uint8_t>& bytes) {
    jpeg_decompress_struct cinfo{};
    JpegErrorManager jerr{};
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = on_jpeg_error;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(std::string("jpeg decode failed: ") + jerr.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    cinfo.dct_method = JDCT_ISLOW;
    jpeg_start_decompress(&cinfo);
    const int w = static_cast<int>(cinfo.output_width);
    const int h = static_cast<int>(cinfo.output_height);
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * h * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    std::vector<float> data(rgb.size());
    for (std::size_t i = 0; i < rgb.size(); ++i) data[i] = rgb[i] / 255.0f;
    return ImageFrame(w, h, std::move(data));
}

ImageFrame jpeg(const ImageFrame& frame, const JpegParams& p) {
    ImageFrame out = jpeg_decode(jpeg_encode(frame, p.quality));
    out.set_coord(frame.coord());
    return out;
}

Displacement elastic_keyframe(int width, int height, const ElasticParams& p, std::uint64_t seed,
                              std::int64_t keyframe) {
    Rng rng(derive_substream(seed, static_cast<std::uint64_t>(keyframe)));
    Plane dx(width, height);
    Plane dy(width, height);
    for (float& v : dx.values()) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    for (float& v : dy.values()) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    dx = gaussian_blur_plane(dx, p.sigma);
    dy = gaussian_blur_plane(dy, p.sigma);
    const auto a = static_cast<float>(p.alpha);
    for (float& v : dx.values()) v *= a;
    for (float& v : dy.values()) v *= a;
    return {std::move(dx), std::move(dy)};
}

Displacement elastic_displacement(int width, int height, const ElasticParams& p, std::uint64_t seed,
                                  std::int64_t time_index) {
    const std::int64_t n = std::max(1, p.keyframe_interval);
    std::int64_t k = time_index / n;
    if (time_index % n != 0 && time_index < 0) --k;
    const std::int64_t phase = time_index - k * n;
    Displacement a = elastic_keyframe(width, height, p, seed, k);
    if (phase == 0) return a;
    const Displacement b = elastic_keyframe(width, height, p, seed, k + 1);
    const float f = static_cast<float>(phase) / static_cast<float>(n);
    auto blend = [f](Plane& lo, const Plane& hi) {
        auto l = lo.values();
        const auto h = hi.values();
        for (std::size_t i = 0; i < l.size(); ++i) l[i] = (1.0f - f) * l[i] + f * h[i];
    };
    blend(a.dx, b.dx);
    blend(a.dy, b.dy);
    return a;
}

ImageFrame warp(const ImageFrame& frame, const Displacement& d) {
    require(d.dx.width() == frame.width() && d.dx.height() == frame.height(),
            "displacement field does not match the frame size");
    ImageFrame out(frame.width(), frame.height(), 0.0f, frame.coord());
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            const double sx = x + d.dx.at(x, y);
            const double sy = y + d.dy.at(x, y);
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = sample_bilinear(frame, sx, sy, c);
        }
    }
    return out;
}

ImageFrame elastic(const ImageFrame& frame, const ElasticParams& p, std::uint64_t seed, std::int64_t time_index) {
    if (p.alpha == 0.0) return frame;
    return warp(frame, elastic_displacement(frame.width(), frame.height(), p, seed, time_index));
}

}  // namespace cb::ops
