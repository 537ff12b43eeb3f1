#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "corruptbench/core/color.h"
#include "corruptbench/core/error.h"
#include "corruptbench/core/filter.h"
#include "corruptbench/core/ssim.h"
#include "corruptbench/io/png_io.h"
#include "corruptbench/corruption/engine.h"
#include "corruptbench/corruption/frost.h"
#include "corruptbench/corruption/operators.h"
#include "corruptbench/corruption/params_json.h"
#include "corruptbench/corruption/seed.h"
#include "corruptbench/pipeline/synthetic.h"
#include "test_util.h"

using namespace cb;

namespace {

constexpr CorruptionKind kImageSpaceKinds[] = {
    CorruptionKind::Brightness,    CorruptionKind::Contrast,     CorruptionKind::Saturate,
    CorruptionKind::DefocusBlur,   CorruptionKind::GaussianBlur, CorruptionKind::GlassBlur,
    CorruptionKind::ZoomBlur,      CorruptionKind::GaussianNoise, CorruptionKind::ImpulseNoise,
    CorruptionKind::SpeckleNoise,  CorruptionKind::ShotNoise,    CorruptionKind::Pixelate,
    CorruptionKind::Jpeg,          CorruptionKind::Elastic,      CorruptionKind::Spatter,
    CorruptionKind::Frost,
};

SeedContext ctx_for(CorruptionKind k, std::int64_t t, Camera cam, std::uint64_t seed = 11,
                    const std::string& scene = "s0") {
    return {seed, scene, cam, t, k};
}

ImageFrame constant(int w, int h, float v) { return ImageFrame(w, h, v); }

double sample_mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Channel-0 differences of a 1000x1000 frame (10^6 pixels).
std::vector<double> diffs(const ImageFrame& a, const ImageFrame& b) {
    std::vector<double> out;
    out.reserve(a.pixel_count());
    for (std::size_t i = 0; i < a.pixel_count(); ++i) out.push_back(b.samples()[3 * i] - a.samples()[3 * i]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- kinds and specs

TEST(Kinds, ConsistencyRowsMatchTheOverviewTable) {
    // time, stereo, depth per kind in overview-table order.
    const char* rows[20] = {"TS-", "TS-", "TS-", "TS-", "TS-", "T--", "T-D", "TS-", "---", "---",
                            "---", "---", "TS-", "TS-", "T--", "T--", "T--", "TSD", "TSD", "TSD"};
    const auto& kinds = all_corruption_kinds();
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const Consistency c = table_consistency(kinds[i]);
        EXPECT_EQ(c.time, rows[i][0] == 'T') << kind_name(kinds[i]);
        EXPECT_EQ(c.stereo, rows[i][1] == 'S') << kind_name(kinds[i]);
        EXPECT_EQ(c.depth, rows[i][2] == 'D') << kind_name(kinds[i]);
    }
}

TEST(Kinds, ReferenceSsimRow) {
    const double row[20] = {0.70, 0.70, 0.72, 0.70, 0.70, 0.73, 0.75, 0.70, 0.20, 0.20,
                            0.20, 0.22, 0.70, 0.70, 0.70, 0.72, 0.73, 0.70, 0.70, 0.71};
    for (std::size_t i = 0; i < 20; ++i) EXPECT_DOUBLE_EQ(reference_ssim(all_corruption_kinds()[i]), row[i]);
}

TEST(Kinds, NamesRoundTripAndUnknownIsRejected) {
    for (CorruptionKind k : all_corruption_kinds()) EXPECT_EQ(kind_from_name(kind_name(k)), k);
    EXPECT_THROW(kind_from_name("blizzard"), ContractError);
}

TEST(Spec, ConstructorEnforcesTableFlags) {
    for (CorruptionKind k : all_corruption_kinds()) {
        const CorruptionSpec spec(k);
        EXPECT_EQ(spec.consistency(), table_consistency(k));
        EXPECT_FALSE(spec.consistency_overridden());
    }
    const auto o = CorruptionSpec::override_consistency(GlassBlurParams{}, {true, true, false});
    EXPECT_TRUE(o.consistency_overridden());
    EXPECT_TRUE(o.consistency().stereo);
}

TEST(Spec, OutOfRangeParametersAreRejected) {
    EXPECT_THROW(CorruptionSpec(JpegParams{0}), ContractError);
    EXPECT_THROW(CorruptionSpec(JpegParams{101}), ContractError);
    EXPECT_THROW(CorruptionSpec(ImpulseNoiseParams{1.5}), ContractError);
    EXPECT_THROW(CorruptionSpec(PixelateParams{0.0}), ContractError);
    EXPECT_THROW(CorruptionSpec(FogParams{0.0, 0.8}), ContractError);
    ZoomBlurParams z;
    z.schedule = {1.0, 0.9};
    EXPECT_THROW(CorruptionSpec{z}, ContractError);
}

TEST(Spec, DefaultsAreTheDocumentedValues) {
    EXPECT_DOUBLE_EQ(BrightnessParams{}.c, 0.39);
    EXPECT_DOUBLE_EQ(ContrastParams{}.c, 0.16);
    EXPECT_DOUBLE_EQ(SaturateParams{}.alpha, 2.3);
    EXPECT_DOUBLE_EQ(SaturateParams{}.beta, 0.01);
    EXPECT_DOUBLE_EQ(DefocusBlurParams{}.radius, 6.0);
    EXPECT_DOUBLE_EQ(GaussianBlurParams{}.sigma, 4.0);
    EXPECT_DOUBLE_EQ(GlassBlurParams{}.sigma, 1.2);
    EXPECT_EQ(GlassBlurParams{}.iterations, 1);
    EXPECT_DOUBLE_EQ(GlassBlurParams{}.radius, 3.0);
    EXPECT_EQ(ZoomBlurParams{}.schedule.size(), 13u);
    EXPECT_NEAR(ZoomBlurParams{}.schedule.back(), 1.24, 1e-12);
    EXPECT_DOUBLE_EQ(GaussianNoiseParams{}.alpha, 0.115);
    EXPECT_DOUBLE_EQ(ImpulseNoiseParams{}.p, 0.075);
    EXPECT_DOUBLE_EQ(SpeckleNoiseParams{}.alpha, 0.45);
    EXPECT_DOUBLE_EQ(ShotNoiseParams{}.c, 23.0);
    EXPECT_DOUBLE_EQ(PixelateParams{}.fraction, 0.16);
    EXPECT_EQ(JpegParams{}.quality, 6);
    EXPECT_DOUBLE_EQ(ElasticParams{}.alpha, 110.0);
    EXPECT_DOUBLE_EQ(ElasticParams{}.sigma, 5.0);
    EXPECT_DOUBLE_EQ(FogParams{}.visibility, 45.0);
}

TEST(ParamsJson, EveryKindRoundTrips) {
    for (CorruptionKind k : all_corruption_kinds()) {
        const CorruptionParams p = default_params(k);
        const auto j = params_to_json(p);
        EXPECT_EQ(params_to_json(params_from_json(k, j)), j) << kind_name(k);
    }
    const auto shot = params_to_json(ShotNoiseParams{std::numeric_limits<double>::infinity()});
    EXPECT_TRUE(std::isinf(std::get<ShotNoiseParams>(params_from_json(CorruptionKind::ShotNoise, shot)).c));
}

TEST(ParamsJson, UnknownKeysAndBadValuesAreRejected) {
    EXPECT_THROW(params_from_json(CorruptionKind::Brightness, {{"c", 0.1}, {"gain", 2}}), ContractError);
    EXPECT_THROW(params_from_json(CorruptionKind::Jpeg, {{"quality", 0}}), ContractError);
}

// ---------------------------------------------------------------- seeding

TEST(Seeds, ConsistentKindsShareStreamsAcrossOmittedCoordinates) {
    for (CorruptionKind k : all_corruption_kinds()) {
        const Consistency c = table_consistency(k);
        const auto base = derive_stream_seed(ctx_for(k, 3, Camera::Left), c);
        EXPECT_EQ(base == derive_stream_seed(ctx_for(k, 4, Camera::Left), c), c.time) << kind_name(k);
        EXPECT_EQ(base == derive_stream_seed(ctx_for(k, 3, Camera::Right), c), c.stereo) << kind_name(k);
        EXPECT_NE(base, derive_stream_seed(ctx_for(k, 3, Camera::Left, 12), c));
        EXPECT_NE(base, derive_stream_seed(ctx_for(k, 3, Camera::Left, 11, "s1"), c));
    }
}

TEST(Seeds, RngIsReproducibleAndPoissonQuantileIsExact) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
    // CDF of Poisson(2): P(0) = e^-2 = 0.1353..., P(<=1) = 3 e^-2 = 0.4060...
    EXPECT_EQ(poisson_quantile(2.0, 0.10), 0);
    EXPECT_EQ(poisson_quantile(2.0, 0.20), 1);
    EXPECT_EQ(poisson_quantile(2.0, 0.41), 2);
    EXPECT_EQ(poisson_quantile(0.0, 0.99), 0);
}

// ---------------------------------------------------------------- color

TEST(Brightness, AddsConstantThenClips) {
    const auto out = ops::brightness(constant(4, 4, 0.2f), {});
    for (float v : out.samples()) EXPECT_NEAR(v, 0.59f, 1e-6);
    const auto clipped = apply(constant(2, 2, 0.9f), CorruptionSpec(CorruptionKind::Brightness),
                               ctx_for(CorruptionKind::Brightness, 0, Camera::Left));
    for (float v : clipped.image.samples()) EXPECT_EQ(v, 1.0f);
}

TEST(Brightness, ParameterRecordedIdenticallyForBothViewsAndTimes) {
    const CorruptionSpec spec(CorruptionKind::Brightness);
    const ImageFrame img = testutil::random_image(8, 8, 1);
    std::set<std::string> records;
    for (std::int64_t t : {0, 1})
        for (Camera cam : {Camera::Left, Camera::Right}) {
            const auto r = apply(img, spec, ctx_for(CorruptionKind::Brightness, t, cam));
            records.insert(r.provenance.realized.dump());
            EXPECT_DOUBLE_EQ(r.provenance.realized.at("params").at("c").get<double>(), 0.39);
        }
    EXPECT_EQ(records.size(), 1u);
}

TEST(Contrast, TwoPixelImageAndMeanPreservation) {
    ImageFrame img(2, 1);
    for (int c = 0; c < 3; ++c) img.at(1, 0, c) = 1.0f;
    const auto out = ops::contrast(img, {});
    EXPECT_NEAR(out.at(0, 0, 0), 0.42f, 1e-6);
    EXPECT_NEAR(out.at(1, 0, 0), 0.58f, 1e-6);
    const auto flat = ops::contrast(constant(5, 5, 0.3f), {});
    for (float v : flat.samples()) EXPECT_NEAR(v, 0.3f, 1e-7);
    const ImageFrame r = testutil::random_image(31, 17, 4);
    const auto rc = ops::contrast(r, {});
    for (int c = 0; c < 3; ++c) {
        double a = 0, b = 0;
        for (std::size_t i = 0; i < r.pixel_count(); ++i) {
            a += r.samples()[3 * i + c];
            b += rc.samples()[3 * i + c];
        }
        EXPECT_NEAR(a / r.pixel_count(), b / r.pixel_count(), 1e-5);
    }
}

TEST(Saturate, GrayscaleGetsBetaSaturation) {
    const auto out = ops::saturate(constant(3, 3, 0.6f), {});
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        const Hsv h = rgb_to_hsv(out.samples()[3 * i], out.samples()[3 * i + 1], out.samples()[3 * i + 2]);
        EXPECT_NEAR(h.s, 0.01f, 1e-5);
        EXPECT_NEAR(h.v, 0.6f, 1e-6);
    }
}

TEST(Saturate, PureRedStaysRed) {
    ImageFrame img(1, 1);
    img.at(0, 0, 0) = 1.0f;
    const auto out = ops::saturate(img, {});
    EXPECT_FLOAT_EQ(out.at(0, 0, 0), 1.0f);
    EXPECT_FLOAT_EQ(out.at(0, 0, 1), 0.0f);
    EXPECT_FLOAT_EQ(out.at(0, 0, 2), 0.0f);
}

TEST(Saturate, HueIsUntouched) {
    const ImageFrame img = testutil::random_image(40, 40, 9);
    const auto out = ops::saturate(img, {});
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const auto* a = &img.samples()[3 * i];
        const auto* b = &out.samples()[3 * i];
        const Hsv ha = rgb_to_hsv(a[0], a[1], a[2]);
        if (ha.s < 0.05f) continue;
        const Hsv hb = rgb_to_hsv(b[0], b[1], b[2]);
        double d = std::abs(ha.h - hb.h);
        d = std::min(d, 1.0 - d);
        EXPECT_LT(d, 1e-4);
    }
}

// ---------------------------------------------------------------- blur

TEST(DefocusBlur, ConstantIsFixedPoint) {
    const auto out = ops::defocus_blur(constant(20, 20, 0.4f), {});
    for (float v : out.samples()) EXPECT_NEAR(v, 0.4f, 1e-6);
}

TEST(DefocusBlur, ImpulseGivesEqualWeightDisk) {
    ImageFrame img(41, 41);
    for (int c = 0; c < 3; ++c) img.at(20, 20, c) = 1.0f;
    const auto out = ops::defocus_blur(img, {});
    int count = 0;
    for (int dy = -6; dy <= 6; ++dy)
        for (int dx = -6; dx <= 6; ++dx) count += dx * dx + dy * dy <= 36 ? 1 : 0;
    for (int y = 0; y < 41; ++y)
        for (int x = 0; x < 41; ++x) {
            const int dx = x - 20, dy = y - 20;
            const double expect = dx * dx + dy * dy <= 36 ? 1.0 / count : 0.0;
            EXPECT_NEAR(out.at(x, y, 1), expect, 1e-7);
        }
}

TEST(DefocusBlur, InteriorMeanPreserved) {
    ImageFrame img = testutil::smooth_image(64, 64);
    const auto out = ops::defocus_blur(img, {});
    double a = 0, b = 0;
    for (float v : img.samples()) a += v;
    for (float v : out.samples()) b += v;
    EXPECT_NEAR(a / img.samples().size(), b / out.samples().size(), 1e-4);
}

TEST(GaussianBlur, ImpulseMatchesSampledGaussian) {
    ImageFrame img(61, 61);
    for (int c = 0; c < 3; ++c) img.at(30, 30, c) = 1.0f;
    const auto out = ops::gaussian_blur(img, {});
    double norm = 0;
    for (int dy = -16; dy <= 16; ++dy)
        for (int dx = -16; dx <= 16; ++dx) norm += std::exp(-(dx * dx + dy * dy) / 32.0);
    for (int dy = -16; dy <= 16; ++dy)
        for (int dx = -16; dx <= 16; ++dx)
            EXPECT_NEAR(out.at(30 + dx, 30 + dy, 0), std::exp(-(dx * dx + dy * dy) / 32.0) / norm, 1e-4);
}

TEST(GaussianBlur, SameKernelAcrossTime) {
    const CorruptionSpec spec(CorruptionKind::GaussianBlur);
    const ImageFrame img = testutil::random_image(20, 20, 3);
    const auto a = apply(img, spec, ctx_for(CorruptionKind::GaussianBlur, 0, Camera::Left));
    const auto b = apply(img, spec, ctx_for(CorruptionKind::GaussianBlur, 1, Camera::Left));
    EXPECT_EQ(a.image, b.image);
    EXPECT_EQ(a.provenance.realized, b.provenance.realized);
}

TEST(GlassBlur, NoIterationsOrZeroRadiusEqualsGaussian) {
    const ImageFrame img = testutil::random_image(30, 20, 5);
    const auto blurred = gaussian_blur_image(img, 1.2);
    EXPECT_EQ(ops::glass_blur(img, {1.2, 0, 3.0}, 7), blurred);
    EXPECT_EQ(ops::glass_blur(img, {1.2, 1, 0.0}, 7), blurred);
}

TEST(GlassBlur, ShufflePreservesMultiset) {
    const ImageFrame img = testutil::random_image(30, 20, 5);
    const auto blurred = gaussian_blur_image(img, 1.2);
    const auto out = ops::glass_blur(img, {}, 99);
    EXPECT_NE(out, blurred);
    auto pixels = [](const ImageFrame& f) {
        std::vector<std::array<float, 3>> v;
        for (std::size_t i = 0; i < f.pixel_count(); ++i)
            v.push_back({f.samples()[3 * i], f.samples()[3 * i + 1], f.samples()[3 * i + 2]});
        std::sort(v.begin(), v.end());
        return v;
    };
    EXPECT_EQ(pixels(out), pixels(blurred));
}

TEST(GlassBlur, IntegerRadiusOffsetsAreUniform) {
    // Offsets are round(U(-r - 1/2, r + 1/2)); for r = 3 each of the 7 values has mass 1/7.
    Rng rng(5);
    std::vector<int> hist(7, 0);
    const int n = 700000;
    for (int i = 0; i < n; ++i) hist[static_cast<std::size_t>(std::lround(rng.uniform(-3.5, 3.5)) + 3)]++;
    for (int h : hist) EXPECT_NEAR(h / static_cast<double>(n), 1.0 / 7.0, 0.003);
}

TEST(ZoomBlur, IdentityScheduleAndConstants) {
    const ImageFrame img = testutil::random_image(15, 11, 2);
    ZoomBlurParams p;
    p.schedule = {1.0};
    EXPECT_EQ(ops::zoom_blur(img, p), img);
    const auto flat = ops::zoom_blur(constant(15, 11, 0.7f), {});
    for (float v : flat.samples()) EXPECT_NEAR(v, 0.7f, 1e-6);
}

TEST(ZoomBlur, CenterOfRadialPatternIsFixed) {
    ImageFrame img(65, 65);
    for (int y = 0; y < 65; ++y)
        for (int x = 0; x < 65; ++x) {
            const double r = std::hypot(x - 32.0, y - 32.0);
            for (int c = 0; c < 3; ++c) img.at(x, y, c) = static_cast<float>(0.5 + 0.4 * std::cos(0.4 * r));
        }
    const auto out = ops::zoom_blur(img, {});
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(out.at(32, 32, c), img.at(32, 32, c), 1e-3);
}

// ---------------------------------------------------------------- noise

TEST(GaussianNoise, ZeroAlphaIsIdentity) {
    const ImageFrame img = testutil::random_image(9, 9, 1);
    EXPECT_EQ(ops::gaussian_noise(img, {0.0}, 4), img);
}

TEST(GaussianNoise, MomentsOnMidGray) {
    const ImageFrame img = constant(1000, 1000, 0.5f);
    const auto d = diffs(img, ops::gaussian_noise(img, {}, 17));
    EXPECT_NEAR(sample_mean(d), 0.0, 0.001);
    EXPECT_NEAR(sample_std(d), 0.115, 0.002);
}

TEST(GaussianNoise, SameContextIsBitIdentical) {
    const CorruptionSpec spec(CorruptionKind::GaussianNoise, 5);
    const ImageFrame img = testutil::random_image(16, 16, 2);
    const auto ctx = ctx_for(CorruptionKind::GaussianNoise, 2, Camera::Right, 5);
    EXPECT_EQ(apply(img, spec, ctx).image, apply(img, spec, ctx).image);
}

TEST(ImpulseNoise, ExtremesAndRate) {
    const ImageFrame img = testutil::random_image(9, 9, 1);
    EXPECT_EQ(ops::impulse_noise(img, {0.0}, 3), img);
    const auto all = ops::impulse_noise(img, {1.0}, 3);
    for (float v : all.samples()) EXPECT_TRUE(v == 0.0f || v == 1.0f);
    const ImageFrame gray = constant(1000, 1000, 0.5f);
    const auto out = ops::impulse_noise(gray, {}, 21);
    std::size_t replaced = 0;
    for (std::size_t i = 0; i < gray.pixel_count(); ++i) replaced += out.samples()[3 * i] != 0.5f ? 1 : 0;
    EXPECT_NEAR(replaced / 1e6, 0.075, 0.001);
}

TEST(SpeckleNoise, BlackUnchangedAndStd) {
    EXPECT_EQ(ops::speckle_noise(constant(8, 8, 0.0f), {}, 3), constant(8, 8, 0.0f));
    const ImageFrame img = testutil::random_image(9, 9, 1);
    EXPECT_EQ(ops::speckle_noise(img, {0.0}, 3), img);
    const ImageFrame gray = constant(1000, 1000, 0.5f);
    EXPECT_NEAR(sample_std(diffs(gray, ops::speckle_noise(gray, {}, 8))), 0.225, 0.002);
}

TEST(ShotNoise, BlackUnchangedMeanAndVariance) {
    EXPECT_EQ(ops::shot_noise(constant(8, 8, 0.0f), {}, 3), constant(8, 8, 0.0f));
    const ImageFrame gray = constant(1000, 1000, 0.5f);
    const auto d = diffs(gray, ops::shot_noise(gray, {}, 31));
    EXPECT_NEAR(0.5 + sample_mean(d), 0.5, 0.002);
    const double var = sample_std(d) * sample_std(d);
    EXPECT_NEAR(var, 0.5 / 23.0, 0.05 * 0.5 / 23.0);
}

TEST(Noise, FieldsDifferAtEveryFrameCoordinate) {
    const ImageFrame img = constant(24, 24, 0.5f);
    for (CorruptionKind k : {CorruptionKind::GaussianNoise, CorruptionKind::ImpulseNoise,
                             CorruptionKind::SpeckleNoise, CorruptionKind::ShotNoise}) {
        const CorruptionSpec spec(k, 3);
        std::vector<ImageFrame> outs;
        std::set<std::uint64_t> seeds;
        for (std::int64_t t : {0, 1, 2})
            for (Camera cam : {Camera::Left, Camera::Right})
                for (const char* scene : {"a", "b"}) {
                    const auto r = apply_unclipped(img, spec, ctx_for(k, t, cam, 3, scene));
                    outs.push_back(r.image);
                    seeds.insert(r.provenance.realized.at("pattern_seed").get<std::uint64_t>());
                }
        EXPECT_EQ(seeds.size(), outs.size()) << kind_name(k);
        for (std::size_t i = 0; i < outs.size(); ++i)
            for (std::size_t j = i + 1; j < outs.size(); ++j) EXPECT_NE(outs[i], outs[j]) << kind_name(k);
    }
}

// ---------------------------------------------------------------- quality

TEST(Pixelate, IdentityConstantsAndCheckerboard) {
    const ImageFrame img = testutil::random_image(12, 10, 3);
    EXPECT_EQ(ops::pixelate(img, {1.0}), img);
    const auto flat = ops::pixelate(constant(13, 9, 0.25f), {});
    for (float v : flat.samples()) EXPECT_NEAR(v, 0.25f, 1e-6);
    ImageFrame board(10, 10);
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 10; ++x)
            for (int c = 0; c < 3; ++c) board.at(x, y, c) = static_cast<float>((x + y) % 2);
    const auto out = ops::pixelate(board, {0.5});
    for (float v : out.samples()) EXPECT_NEAR(v, 0.5f, 1e-6);
}

TEST(Jpeg, HighQualityIsNearLosslessOnGradients) {
    ImageFrame grad(64, 48);
    for (int y = 0; y < 48; ++y)
        for (int x = 0; x < 64; ++x) {
            grad.at(x, y, 0) = x / 63.0f;
            grad.at(x, y, 1) = y / 47.0f;
            grad.at(x, y, 2) = 0.5f;
        }
    EXPECT_GT(ssim(grad, ops::jpeg(grad, {100})), 0.99);
}

TEST(Jpeg, LowQualityVisiblyDegradesNaturalImages) {
    const ImageFrame img = synthetic_corpus(1, 128, 96).front().image;
    const auto out = ops::jpeg(img, {});
    double mad = 0;
    for (std::size_t i = 0; i < img.samples().size(); ++i) mad += std::abs(img.samples()[i] - out.samples()[i]);
    EXPECT_GT(mad / img.samples().size(), 0.005);
}

TEST(Jpeg, EncoderIsDeterministic) {
    const ImageFrame img = testutil::random_image(33, 17, 8);
    const auto a = ops::jpeg_encode(img, 6);
    EXPECT_EQ(a, ops::jpeg_encode(img, 6));
    EXPECT_EQ(a[0], 0xFF);
    EXPECT_EQ(a[1], 0xD8);
}

TEST(Elastic, ZeroAlphaIsIdentity) {
    const ImageFrame img = testutil::random_image(20, 16, 4);
    ElasticParams p;
    p.alpha = 0.0;
    EXPECT_EQ(ops::elastic(img, p, 3, 5), img);
}

TEST(Elastic, DisplacementBoundedByAlpha) {
    const ElasticParams p;
    for (std::int64_t t : {0, 4, 13}) {
        const auto d = ops::elastic_displacement(64, 48, p, 77, t);
        for (std::size_t i = 0; i < d.dx.values().size(); ++i)
            EXPECT_LE(std::hypot(d.dx.values()[i], d.dy.values()[i]), p.alpha);
    }
}

TEST(Elastic, AdjacentFramesChangeLessThanTheDisplacementItself) {
    const ElasticParams p;
    double max_disp = 0;
    for (std::int64_t t = 0; t < 25; ++t) {
        const auto a = ops::elastic_displacement(48, 40, p, 5, t);
        const auto b = ops::elastic_displacement(48, 40, p, 5, t + 1);
        double change = 0;
        for (std::size_t i = 0; i < a.dx.values().size(); ++i) {
            max_disp = std::max<double>(max_disp, std::hypot(a.dx.values()[i], a.dy.values()[i]));
            change += std::hypot(b.dx.values()[i] - a.dx.values()[i], b.dy.values()[i] - a.dy.values()[i]);
        }
        change /= static_cast<double>(a.dx.values().size());
        EXPECT_LE(change, max_disp);
        if (t % p.keyframe_interval == 0) {
            // Keyframe times reproduce the keyframe field exactly.
            const auto k = ops::elastic_keyframe(48, 40, p, 5, t / p.keyframe_interval);
            EXPECT_EQ(std::vector<float>(a.dx.values().begin(), a.dx.values().end()),
                      std::vector<float>(k.dx.values().begin(), k.dx.values().end()));
        }
    }
}

TEST(Spatter, HighThresholdIsIdentity) {
    const ImageFrame img = testutil::random_image(20, 20, 4);
    SpatterParams p;
    p.threshold = 100.0;
    EXPECT_EQ(ops::spatter(img, p, 9), img);
}

TEST(Spatter, CoverageDecreasesWithThreshold) {
    double prev = 2.0;
    for (double thr : {0.3, 0.5, 0.65, 0.8, 1.0}) {
        SpatterParams p;
        p.threshold = thr;
        const Plane layer = ops::spatter_layer(96, 64, p, 4);
        double covered = 0;
        for (float v : layer.values()) covered += v > 0.0f ? 1 : 0;
        covered /= static_cast<double>(layer.values().size());
        EXPECT_LE(covered, prev);
        prev = covered;
    }
}

TEST(Spatter, SameDropletsOverTimeDifferentPerCamera) {
    const CorruptionSpec spec(CorruptionKind::Spatter, 4);
    const ImageFrame img = constant(32, 32, 0.8f);
    const auto l0 = apply(img, spec, ctx_for(CorruptionKind::Spatter, 0, Camera::Left, 4));
    const auto l1 = apply(img, spec, ctx_for(CorruptionKind::Spatter, 1, Camera::Left, 4));
    const auto r0 = apply(img, spec, ctx_for(CorruptionKind::Spatter, 0, Camera::Right, 4));
    EXPECT_EQ(l0.image, l1.image);
    EXPECT_EQ(l0.provenance.realized, l1.provenance.realized);
    EXPECT_NE(l0.provenance.realized, r0.provenance.realized);
}

TEST(Frost, BlendEndpoints) {
    const FrostLibrary lib = FrostLibrary::procedural(128);
    ASSERT_EQ(lib.size(), 3u);
    const ImageFrame img = testutil::random_image(40, 30, 2);
    const FrostPlacement pl = frost_placement(lib, 40, 30, 6);
    FrostParams p;
    p.blend_weight = 1.0;
    EXPECT_EQ(ops::frost(img, p, lib, pl), img);
    p.blend_weight = 0.0;
    const auto out = ops::frost(img, p, lib, pl);
    const auto layer = frost_layer(lib, pl, 40, 30);
    for (std::size_t i = 0; i < out.samples().size(); ++i) EXPECT_NEAR(out.samples()[i], layer.samples()[i], 1e-6);
}

TEST(Frost, PlacementSharedOverTimeNotAcrossCameras) {
    const CorruptionSpec spec(CorruptionKind::Frost, 2);
    const ImageFrame img = testutil::random_image(48, 32, 1);
    const auto l0 = apply(img, spec, ctx_for(CorruptionKind::Frost, 0, Camera::Left, 2));
    const auto l5 = apply(img, spec, ctx_for(CorruptionKind::Frost, 5, Camera::Left, 2));
    const auto r0 = apply(img, spec, ctx_for(CorruptionKind::Frost, 0, Camera::Right, 2));
    EXPECT_EQ(l0.provenance.realized, l5.provenance.realized);
    EXPECT_NE(l0.provenance.realized.at("crop_offset"), r0.provenance.realized.at("crop_offset"));
}

TEST(Frost, TextureDirectoryIsLoadedSorted) {
    const auto dir = testutil::temp_dir("frostdir");
    EXPECT_THROW(FrostLibrary::from_directory(dir), IoError);
    write_image(constant(16, 16, 0.9f), dir / "b.png");
    write_image(constant(16, 16, 0.1f), dir / "a.png");
    const FrostLibrary lib = FrostLibrary::from_directory(dir);
    ASSERT_EQ(lib.size(), 2u);
    EXPECT_NEAR(lib.texture(0).at(0, 0, 0), 0.1f, 1e-4);
}

// ---------------------------------------------------------------- engine properties

TEST(Engine, OutputsAreClipValidAndShapePreserving) {
    for (CorruptionKind k : kImageSpaceKinds) {
        const CorruptionSpec spec(k, 1);
        for (std::uint64_t s = 0; s < 3; ++s) {
            ImageFrame img = testutil::random_image(37, 23, s);
            const auto r = apply(img, spec, ctx_for(k, static_cast<std::int64_t>(s), Camera::Left, 1));
            EXPECT_TRUE(r.image.is_clip_valid()) << kind_name(k);
            EXPECT_EQ(r.image.width(), 37);
            EXPECT_EQ(r.image.height(), 23);
        }
    }
}

TEST(Engine, DeterministicAndOrderIndependent) {
    const ImageFrame img = testutil::random_image(21, 19, 6);
    std::vector<ImageFrame> first;
    for (CorruptionKind k : kImageSpaceKinds) first.push_back(apply(img, CorruptionSpec(k, 8), ctx_for(k, 2, Camera::Right, 8)).image);
    std::size_t i = std::size(kImageSpaceKinds);
    for (auto it = std::rbegin(kImageSpaceKinds); it != std::rend(kImageSpaceKinds); ++it) {
        --i;
        EXPECT_EQ(apply(img, CorruptionSpec(*it, 8), ctx_for(*it, 2, Camera::Right, 8)).image, first[i]);
    }
}

TEST(Engine, ProvenanceFollowsConsistencyFlags) {
    const ImageFrame img = testutil::random_image(32, 24, 6);
    for (CorruptionKind k : kImageSpaceKinds) {
        const CorruptionSpec spec(k, 13);
        const Consistency c = spec.consistency();
        const auto base = apply(img, spec, ctx_for(k, 3, Camera::Left, 13)).provenance;
        const auto later = apply(img, spec, ctx_for(k, 4, Camera::Left, 13)).provenance;
        const auto right = apply(img, spec, ctx_for(k, 3, Camera::Right, 13)).provenance;
        const bool has_pattern = base.realized.contains("pattern_seed") || base.realized.contains("texture_index");
        if (c.time) {
            EXPECT_EQ(base.realized, later.realized) << kind_name(k);
        }
        if (c.stereo) {
            EXPECT_EQ(base.realized, right.realized) << kind_name(k);
        }
        if (has_pattern && !c.time) {
            EXPECT_NE(base.realized, later.realized) << kind_name(k);
        }
        if (has_pattern && !c.stereo) {
            EXPECT_NE(base.realized, right.realized) << kind_name(k);
        }
        EXPECT_EQ(base.consistency, c);
    }
}

TEST(Engine, ProvenanceJsonRoundTrips) {
    const auto r = apply(testutil::random_image(16, 16, 1), CorruptionSpec(CorruptionKind::Elastic, 2),
                         ctx_for(CorruptionKind::Elastic, 7, Camera::Right, 2));
    const Provenance back = Provenance::from_json(r.provenance.to_json());
    EXPECT_EQ(back.to_json(), r.provenance.to_json());
    EXPECT_EQ(back.coord.time_index, 7);
}

TEST(Engine, MismatchedContextAndSceneKindsAreRejected) {
    const ImageFrame img = testutil::random_image(8, 8, 1);
    EXPECT_THROW(apply(img, CorruptionSpec(CorruptionKind::Brightness), ctx_for(CorruptionKind::Contrast, 0, Camera::Left)),
                 ContractError);
    EXPECT_THROW(apply(img, CorruptionSpec(CorruptionKind::Fog), ctx_for(CorruptionKind::Fog, 0, Camera::Left)),
                 ContractError);
}
