#include <gtest/gtest.h>

#include <cmath>

#include "corruptbench/calibration/calibration.h"
#include "corruptbench/core/error.h"
#include "corruptbench/corruption/params_json.h"
#include "corruptbench/pipeline/synthetic.h"
#include "test_util.h"

using namespace cb;

namespace {

bool json_near(const nlohmann::json& a, const nlohmann::json& b) {
    if (a.is_number() && b.is_number()) return std::abs(a.get<double>() - b.get<double>()) < 1e-12;
    if (a.type() != b.type() || a.size() != b.size()) return false;
    if (a.is_object()) {
        for (const auto& [k, v] : a.items())
            if (!b.contains(k) || !json_near(v, b.at(k))) return false;
        return true;
    }
    if (a.is_array()) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!json_near(a[i], b[i])) return false;
        return true;
    }
    return a == b;
}

const std::vector<CalibrationSample>& corpus(CameraRig* rig_out = nullptr) {
    static CameraRig rig;
    static const std::vector<CalibrationSample> samples = synthetic_calibration_samples(10, &rig);
    if (rig_out) *rig_out = rig;
    return samples;
}

std::vector<CalibrationSample> small_corpus(CameraRig& rig) {
    CameraRig full;
    const auto& all = corpus(&full);
    rig = full;
    return {all.begin(), all.begin() + 3};
}

}  // namespace

TEST(Knobs, ThetaZeroIsIdentityForEveryKind) {
    CameraRig rig;
    const auto samples = small_corpus(rig);
    for (CorruptionKind k : all_corruption_kinds()) {
        // JPEG at quality 100 is not bit-exact, so its identity is approximate.
        const double tol = k == CorruptionKind::Jpeg ? 0.02 : 1e-9;
        EXPECT_NEAR(mean_ssim(k, knob_params(k, 0.0), samples, rig), 1.0, tol) << kind_name(k);
    }
}

TEST(Knobs, ThetaOneReproducesDefaults) {
    for (CorruptionKind k : all_corruption_kinds()) {
        EXPECT_TRUE(json_near(params_to_json(knob_params(k, 1.0)), params_to_json(default_params(k)))) << kind_name(k);
        EXPECT_GT(severity_knob(k).theta_max, 1.0) << kind_name(k);
    }
}

TEST(Knobs, SsimFallsAsThetaGrows) {
    CameraRig rig;
    const auto samples = small_corpus(rig);
    for (CorruptionKind k : {CorruptionKind::Brightness, CorruptionKind::GaussianBlur, CorruptionKind::GaussianNoise,
                             CorruptionKind::Pixelate, CorruptionKind::Fog}) {
        double prev = 1.0 + 1e-9;
        for (double t : {0.25, 0.5, 1.0, 2.0}) {
            const double s = mean_ssim(k, knob_params(k, t), samples, rig);
            EXPECT_LE(s, prev) << kind_name(k) << " theta " << t;
            prev = s;
        }
    }
}

TEST(Targets, NoiseKindsUseTheLowTarget) {
    for (CorruptionKind k : all_corruption_kinds()) {
        const bool noise = k == CorruptionKind::GaussianNoise || k == CorruptionKind::ImpulseNoise ||
                           k == CorruptionKind::SpeckleNoise || k == CorruptionKind::ShotNoise;
        EXPECT_DOUBLE_EQ(CalibrationTarget::for_kind(k).ssim, noise ? 0.20 : 0.70);
        EXPECT_DOUBLE_EQ(CalibrationTarget::for_kind(k).tolerance, 0.02);
    }
}

TEST(Calibrate, GaussianNoiseOnAMidDetailImage) {
    const auto frame = synthetic_corpus(1, 512, 512, 77).front();
    const std::vector<CalibrationSample> one{{frame.image, std::nullopt, std::nullopt}};
    CameraRig rig;
    rig.focal_x = 400;
    rig.baseline = 0.2;
    const auto r = calibrate(CorruptionKind::GaussianNoise, one, rig, CalibrationTarget::for_kind(CorruptionKind::GaussianNoise));
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.ssim, 0.18);
    EXPECT_LE(r.ssim, 0.22);
}

TEST(Calibrate, GaussianBlurLandsNearTheDocumentedSigma) {
    CameraRig rig;
    const auto& samples = corpus(&rig);
    const auto r = calibrate(CorruptionKind::GaussianBlur, samples, rig, {0.70, 0.02});
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.ssim, 0.68);
    EXPECT_LE(r.ssim, 0.72);
    const double sigma = std::get<GaussianBlurParams>(r.params).sigma;
    EXPECT_GE(sigma, 2.0);
    EXPECT_LE(sigma, 8.0);
    EXPECT_NEAR(mean_ssim(CorruptionKind::GaussianBlur, r.params, samples, rig), r.ssim, 1e-12);
}

TEST(Calibrate, BracketIsMonotoneAndResultReproducible) {
    CameraRig rig;
    const auto samples = small_corpus(rig);
    const CalibrationTarget target{0.70, 0.005};
    const auto a = calibrate(CorruptionKind::Brightness, samples, rig, target);
    const auto b = calibrate(CorruptionKind::Brightness, samples, rig, target);
    EXPECT_NEAR(a.theta, b.theta, 1e-6);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_LE(a.lo, a.theta);
    EXPECT_GE(a.hi, a.theta);
    EXPECT_GE(mean_ssim(CorruptionKind::Brightness, knob_params(CorruptionKind::Brightness, a.lo), samples, rig),
              target.ssim - target.tolerance);
    EXPECT_LE(mean_ssim(CorruptionKind::Brightness, knob_params(CorruptionKind::Brightness, a.hi), samples, rig),
              target.ssim + target.tolerance);
}

TEST(Calibrate, UnreachableTargetIsReported) {
    CameraRig rig;
    const auto samples = small_corpus(rig);
    CalibrationOptions opt;
    opt.theta_max = 0.05;
    try {
        calibrate(CorruptionKind::GaussianBlur, samples, rig, {0.3, 0.02}, opt);
        FAIL() << "expected ContractError";
    } catch (const ContractError& e) {
        EXPECT_NE(std::string(e.what()).find("gaussian_blur"), std::string::npos);
    }
}

TEST(Calibrate, NoSamplesIsAContractError) {
    EXPECT_THROW(calibrate(CorruptionKind::Brightness, {}, CameraRig{200.0, 0.1, std::nullopt, std::nullopt, 0.04}, {}), ContractError);
}

TEST(Severity, IdentityPairsScoreOne) {
    std::map<CorruptionKind, std::vector<std::pair<ImageFrame, ImageFrame>>> pairs;
    const ImageFrame img = testutil::random_image(32, 32, 1);
    pairs[CorruptionKind::Contrast].push_back({img, img});
    pairs[CorruptionKind::Jpeg].push_back({img, img});
    const auto rows = verify_severity(pairs);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_DOUBLE_EQ(r.mean_ssim, 1.0);
        EXPECT_EQ(r.frames, 1u);
    }
}

// Default parameters are pixel-scale values for full-HD frames, so the band is
// checked on the corpus rendered at 768x512 rather than the calibration size.
TEST(Severity, DefaultParametersFallInTheLooseBands) {
    CameraRig rig;
    const auto samples = synthetic_calibration_samples(10, &rig, 768, 512);
    std::vector<CorruptionSpec> specs;
    for (CorruptionKind k : all_corruption_kinds()) specs.emplace_back(k, 0);
    const auto rows = verify_severity(specs, samples, rig, 2);
    ASSERT_EQ(rows.size(), 20u);
    for (const auto& r : rows) {
        const bool noise = reference_ssim(r.kind) < 0.5;
        if (noise) {
            EXPECT_LE(r.mean_ssim, 0.35) << kind_name(r.kind);
        } else {
            EXPECT_GE(r.mean_ssim, 0.60) << kind_name(r.kind);
        }
        EXPECT_EQ(r.frames, samples.size());
        EXPECT_DOUBLE_EQ(r.reference_ssim, reference_ssim(r.kind));
    }
}

TEST(Preset, RoundTripsAndMerges) {
    const auto dir = testutil::temp_dir("preset");
    CalibrationResult a{CorruptionKind::Brightness, 1.2, 0.71, 6, true, 1.1, 1.3, knob_params(CorruptionKind::Brightness, 1.2)};
    CalibrationResult b{CorruptionKind::Jpeg, 0.9, 0.69, 5, true, 0.8, 1.0, knob_params(CorruptionKind::Jpeg, 0.9)};
    SeverityPreset p;
    p.add(a);
    p.save(dir / "p.json");
    const SeverityPreset back = SeverityPreset::load(dir / "p.json");
    EXPECT_EQ(back.to_json(), p.to_json());
    EXPECT_EQ(back.to_json().at("version"), 1);

    SeverityPreset q;
    q.add(b);
    q.merge_into(dir / "p.json");
    const SeverityPreset merged = SeverityPreset::load(dir / "p.json");
    EXPECT_EQ(merged.params.size(), 2u);
    EXPECT_THROW(SeverityPreset::from_json({{"version", 1}, {"presets", {{"hail", {}}}}}), ContractError);
    EXPECT_THROW(SeverityPreset::load(dir / "missing.json"), IoError);
}
