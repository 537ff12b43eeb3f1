#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "corruptbench/core/error.h"
#include "corruptbench/io/field_io.h"
#include "corruptbench/io/png_io.h"
#include "corruptbench/pipeline/commands.h"
#include "corruptbench/pipeline/manifest.h"
#include "corruptbench/pipeline/synthetic.h"
#include "fixtures/published_tables.h"
#include "test_util.h"

using namespace cb;
namespace fs = std::filesystem;

namespace {

nlohmann::json view(const std::string& img) { return {{"image", img}}; }

nlohmann::json minimal_manifest() {
    return {{"rig", {{"focal_x", 100.0}, {"baseline", 0.1}}},
            {"scenes",
             {{{"id", "a"},
               {"frames",
                {{{"t", 0}, {"left", view("a/l0.png")}, {"right", view("a/r0.png")}},
                 {{"t", 1}, {"left", view("a/l1.png")}, {"right", view("a/r1.png")}}}}}}}};
}

// Flat file listing with contents, for byte-level tree comparison.
std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), root).string()] = ss.str();
    }
    return out;
}

const fs::path& synth_manifest() {
    static const fs::path path = write_synthetic_manifest(testutil::temp_dir("pipeline_synth"), 2, 2, 64, 48, 7);
    return path;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CB_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

// ---------------------------------------------------------------- manifest

TEST(Manifest, ParsesAndResolvesPaths) {
    const Manifest m = Manifest::parse(minimal_manifest(), "/data");
    ASSERT_EQ(m.scenes.size(), 1u);
    EXPECT_EQ(m.frame_count(), 4u);
    EXPECT_EQ(m.scenes[0].frames[1].right.image, fs::path("/data/a/r1.png"));
    EXPECT_FALSE(m.scenes[0].frames[0].left.depth.has_value());
    EXPECT_DOUBLE_EQ(m.rig.focal_x, 100.0);
}

TEST(Manifest, ValidationFailures) {
    auto bad = [](auto&& edit) {
        nlohmann::json j = minimal_manifest();
        edit(j);
        EXPECT_THROW(Manifest::parse(j, "/d"), ContractError) << j.dump();
    };
    bad([](nlohmann::json& j) { j["scenes"][0]["id"] = "a/b"; });
    bad([](nlohmann::json& j) { j["scenes"].push_back(j["scenes"][0]); });
    bad([](nlohmann::json& j) { j["scenes"][0]["frames"][0]["t"] = -1; });
    bad([](nlohmann::json& j) { j["scenes"][0]["frames"][1]["t"] = 3; });
    bad([](nlohmann::json& j) { j["scenes"][0]["frames"][0].erase("right"); });
    bad([](nlohmann::json& j) { j["scenes"][0]["frames"][0]["left"]["pose"] = std::vector<double>(11, 0.0); });
    bad([](nlohmann::json& j) { j["scenes"][0]["frames"][0]["left"].erase("image"); });
    bad([](nlohmann::json& j) { j.erase("rig"); });
    bad([](nlohmann::json& j) { j["scenes"] = nlohmann::json::array(); });
}

TEST(Manifest, MissingFilesAreListedTogether) {
    const auto dir = testutil::temp_dir("manifest_missing");
    const Manifest m = Manifest::parse(minimal_manifest(), dir);
    try {
        m.check_files();
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("l0.png"), std::string::npos);
        EXPECT_NE(msg.find("r1.png"), std::string::npos);
    }
    EXPECT_THROW(Manifest::load(dir / "nope.json"), IoError);
    write_text(dir / "broken.json", "{ not json");
    EXPECT_THROW(Manifest::load(dir / "broken.json"), IoError);
}

TEST(Manifest, DepthFallsBackToDisparity) {
    const Manifest m = Manifest::load(synth_manifest());
    ViewEntry v = m.scenes[0].frames[0].left;
    const auto from_file = load_view_depth(v, m.rig);
    ASSERT_TRUE(from_file.has_value());
    v.depth.reset();
    const auto from_disp = load_view_depth(v, m.rig);
    ASSERT_TRUE(from_disp.has_value());
    int close = 0, valid = 0;
    for (int y = 0; y < from_file->height(); ++y)
        for (int x = 0; x < from_file->width(); ++x) {
            if (!DepthMap::is_valid(from_file->at(x, y))) continue;
            ++valid;
            close += std::abs(from_file->at(x, y) - from_disp->at(x, y)) < 1e-3 * from_file->at(x, y) ? 1 : 0;
        }
    EXPECT_EQ(close, valid);
    v.disparity.reset();
    EXPECT_FALSE(load_view_depth(v, m.rig).has_value());
}

TEST(Manifest, LabelsAndStems) {
    EXPECT_EQ(frame_label("s", 3, Camera::Right), "s t=3 right");
    EXPECT_EQ(frame_stem(7), "0007");
}

// ---------------------------------------------------------------- helpers

TEST(Lists, KindsAndMetrics) {
    EXPECT_EQ(parse_kind_list("all").size(), 20u);
    EXPECT_EQ(parse_kind_list("fog,brightness,fog"),
              (std::vector<CorruptionKind>{CorruptionKind::Fog, CorruptionKind::Brightness}));
    EXPECT_THROW(parse_kind_list("fog,haze"), ContractError);
    EXPECT_THROW(parse_kind_list(""), ContractError);
    EXPECT_EQ(parse_metric_list("epe,1px"), (std::vector<MetricKind>{MetricKind::Epe, MetricKind::OnePx}));
    EXPECT_EQ(default_metrics("stereo"), (std::vector<MetricKind>{MetricKind::Abs, MetricKind::OnePx, MetricKind::D1}));
    EXPECT_THROW(default_metrics("depth"), ContractError);
}

TEST(Lists, MissingInputsPerKind) {
    Manifest m = Manifest::parse(minimal_manifest(), "/d");
    EXPECT_TRUE(missing_inputs(m, CorruptionKind::Brightness).empty());
    EXPECT_EQ(missing_inputs(m, CorruptionKind::Fog).size(), 4u);
    EXPECT_EQ(missing_inputs(m, CorruptionKind::MotionBlur).size(), 4u);
    m.scenes[0].frames[0].left.flow = "/d/f.rsf";
    EXPECT_EQ(missing_inputs(m, CorruptionKind::MotionBlur).size(), 3u);
}

// ---------------------------------------------------------------- corrupt

TEST(Corrupt, LayoutSidecarsAndReport) {
    const Manifest m = Manifest::load(synth_manifest());
    const auto out = testutil::temp_dir("corrupt_layout");
    RunConfig cfg;
    cfg.kinds = {CorruptionKind::Brightness, CorruptionKind::GlassBlur, CorruptionKind::Snow};
    cfg.seed = 5;
    cfg.out = out;
    const auto report = cmd_corrupt(m, cfg);
    EXPECT_EQ(report.at("version"), kSchemaVersion);
    for (const char* k : {"brightness", "glass_blur", "snow"})
        for (const char* s : {"scene00", "scene01"})
            for (const char* cam : {"left", "right"})
                for (const char* f : {"0000", "0001"}) {
                    const fs::path base = out / k / s / cam / f;
                    ASSERT_TRUE(fs::exists(base.string() + ".png")) << base;
                    const auto side = read_json(base.string() + ".json");
                    EXPECT_EQ(side.at("version"), kSchemaVersion);
                    EXPECT_EQ(side.at("provenance").at("kind"), k);
                }
    EXPECT_TRUE(fs::exists(out / "corrupt_report.json"));
    const ImageFrame img = read_image(out / "brightness/scene00/left/0000.png");
    const ImageFrame clean = read_image(m.scenes[0].frames[0].left.image);
    EXPECT_EQ(img.width(), clean.width());
}

TEST(Corrupt, ParallelismDoesNotChangeBytes) {
    const Manifest m = Manifest::load(synth_manifest());
    RunConfig cfg;
    cfg.kinds = parse_kind_list("glass_blur,gaussian_noise,elastic,frost,rain,motion_blur");
    cfg.seed = 3;
    const auto a = testutil::temp_dir("corrupt_j1");
    const auto b = testutil::temp_dir("corrupt_j4");
    cfg.out = a;
    cmd_corrupt(m, cfg);
    cfg.jobs = 4;
    cfg.out = b;
    cmd_corrupt(m, cfg);
    const auto ta = tree(a);
    EXPECT_EQ(ta.size(), 6u * 8u * 2u + 1u);
    EXPECT_EQ(ta, tree(b));
}

TEST(Corrupt, MissingInputsAreReportedForEveryFrame) {
    const auto dir = testutil::temp_dir("corrupt_nodepth");
    auto j = read_json(synth_manifest());
    for (auto& s : j["scenes"])
        for (auto& f : s["frames"])
            for (const char* cam : {"left", "right"}) {
                f[cam].erase("depth");
                f[cam].erase("disparity");
            }
    const Manifest m = Manifest::parse(j, synth_manifest().parent_path());
    RunConfig cfg;
    cfg.kinds = {CorruptionKind::Fog};
    cfg.out = dir;
    try {
        cmd_corrupt(m, cfg);
        FAIL() << "expected ContractError";
    } catch (const ContractError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("scene00 t=0 left"), std::string::npos);
        EXPECT_NE(msg.find("scene01 t=1 right"), std::string::npos);
    }
}

// ---------------------------------------------------------------- evaluate

namespace {

struct PredictionTree {
    fs::path clean, corrupt, masks, gt;
};

PredictionTree make_prediction_tree() {
    const auto root = testutil::temp_dir("eval_tree");
    PredictionTree t{root / "clean", root / "corrupt", root / "masks", root / "gt"};
    for (int f = 0; f < 2; ++f) {
        const auto clean = testutil::random_field(10, 8, FieldKind::Flow, 10 + f);
        const std::string rel = "s/left/000" + std::to_string(f) + ".flow.rsf";
        write_field(clean, t.clean / rel);
        write_field(clean, t.gt / rel);
        PredictionField shifted = clean;
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 10; ++x) shifted.at(x, y, 0) += f == 0 ? 3.0f : 0.5f;
        write_field(shifted, t.corrupt / "fog" / rel);
        write_field(clean, t.corrupt / "brightness" / rel);
        PixelMask mask(10, 8, false);
        for (std::size_t i = 0; i < (f == 0 ? 20u : 60u); ++i) mask.set(i, true);
        write_mask(mask, t.masks / "s/left" / ("000" + std::to_string(f) + ".rsm"));
    }
    return t;
}

}  // namespace

TEST(Evaluate, PixelPooledValuesWithMasks) {
    const PredictionTree t = make_prediction_tree();
    EvaluateConfig cfg;
    cfg.clean = t.clean;
    cfg.corrupt = t.corrupt;
    cfg.metrics = {MetricKind::Epe, MetricKind::OnePx};
    const RobustnessReport full = cmd_evaluate(cfg);
    ASSERT_EQ(full.rows.size(), 2u);
    EXPECT_EQ(full.rows[0].corruption, "brightness");
    EXPECT_EQ(full.rows[0].values.at(MetricKind::Epe), 0.0);
    EXPECT_NEAR(full.rows[1].values.at(MetricKind::Epe), (3.0 * 80 + 0.5 * 80) / 160, 1e-6);
    EXPECT_NEAR(full.rows[1].values.at(MetricKind::OnePx), 50.0, 1e-9);
    cfg.masks = t.masks;
    const RobustnessReport masked = cmd_evaluate(cfg);
    EXPECT_NEAR(masked.rows[1].values.at(MetricKind::Epe), (3.0 * 20 + 0.5 * 60) / 80, 1e-6);
    EXPECT_NEAR(masked.rows[1].values.at(MetricKind::OnePx), 25.0, 1e-9);
    cfg.ground_truth = t.gt;
    const RobustnessReport with_gt = cmd_evaluate(cfg);
    ASSERT_TRUE(with_gt.clean_error.has_value());
    EXPECT_EQ(with_gt.clean_error->at(MetricKind::Epe), 0.0);
}

TEST(Evaluate, MissingCounterpartsAndWrongTask) {
    const PredictionTree t = make_prediction_tree();
    fs::remove(t.corrupt / "fog/s/left/0001.flow.rsf");
    EvaluateConfig cfg;
    cfg.clean = t.clean;
    cfg.corrupt = t.corrupt;
    EXPECT_THROW(cmd_evaluate(cfg), IoError);
    cfg.kinds = {CorruptionKind::Brightness};
    cfg.task = "stereo";
    EXPECT_THROW(cmd_evaluate(cfg), ContractError);
}

// ---------------------------------------------------------------- rank

TEST(Rank, MatrixFileWithSchulze) {
    const auto dir = testutil::temp_dir("rank_matrix");
    write_json(dir / "matrix.json", PairwiseMatrix{fixtures::kMatrixModels, fixtures::kMatrix}.to_json());
    RankConfig cfg;
    cfg.matrix = dir / "matrix.json";
    const auto out = cmd_rank(cfg);
    EXPECT_EQ(out.at("method"), "schulze");
    EXPECT_EQ(out.at("ranking").at("order").front(), "MS-RAFT+");
    cfg.method = RankMethod::Average;
    EXPECT_THROW(cmd_rank(cfg), ContractError);
}

TEST(Rank, ReportsByAverageAndMedian) {
    const auto dir = testutil::temp_dir("rank_reports");
    RankConfig cfg;
    for (std::size_t m = 0; m < fixtures::kModels.size(); ++m) {
        RobustnessReport r;
        r.model = fixtures::kModels[m];
        r.metrics = {MetricKind::Epe};
        for (std::size_t c = 0; c < 20; ++c) r.rows.push_back({fixtures::kCorruptions[c], {{MetricKind::Epe, fixtures::kEpe[m][c]}}});
        const fs::path p = dir / ("r" + std::to_string(m) + ".json");
        write_json(p, r.to_json());
        cfg.reports.push_back(p);
    }
    cfg.method = RankMethod::Median;
    EXPECT_EQ(cmd_rank(cfg).at("ranking").at("order").get<std::vector<std::string>>(), fixtures::kMedianOrder);
    cfg.method = RankMethod::Average;
    EXPECT_EQ(cmd_rank(cfg).at("ranking").at("order").get<std::vector<std::string>>(), fixtures::kAverageOrder);
    cfg.method = RankMethod::Schulze;
    const auto s = cmd_rank(cfg);
    EXPECT_EQ(s.at("matrix").at("counts").size(), 8u);
}

// ---------------------------------------------------------------- subsample

TEST(Subsample, MaskFilesAndReport) {
    const auto dir = testutil::temp_dir("subsample");
    SubsampleConfig cfg;
    cfg.width = 1920;
    cfg.height = 1080;
    cfg.fraction = 0.0005;
    cfg.seed = 1;
    cfg.frames = {"s/left/0000", "s/left/0001"};
    cfg.hero = {"s/left/0001"};
    cfg.out = dir;
    const auto report = cmd_subsample(cfg);
    EXPECT_EQ(read_mask(dir / "s/left/0000.rsm").popcount(), 1037u);
    // Hero frames reach the same budget through the two-stage scheme.
    EXPECT_EQ(read_mask(dir / "s/left/0001.rsm").popcount(), 1037u);
    EXPECT_NE(read_mask(dir / "s/left/0001.rsm"), make_mask(1920, 1080, 0.0005, 1, "s/left/0001"));
    EXPECT_TRUE(fs::exists(dir / "subsample_report.json"));
    EXPECT_EQ(report.at("version"), kSchemaVersion);
}

// ---------------------------------------------------------------- command line

TEST(Cli, ExitCodes) {
    const auto dir = testutil::temp_dir("cli");
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli(""), 2);
    EXPECT_EQ(run_cli("corrupt --manifest " + (dir / "missing.json").string() + " --out " + dir.string()), 3);
    EXPECT_EQ(run_cli("corrupt --manifest " + synth_manifest().string() + " --kinds haze --out " + dir.string()), 2);
    EXPECT_EQ(run_cli("corrupt --manifest " + synth_manifest().string() + " --kinds brightness --jobs 0 --out " +
                      dir.string()),
              2);
    EXPECT_EQ(run_cli("corrupt --manifest " + synth_manifest().string() + " --kinds brightness --out " +
                      (dir / "ok").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "ok/brightness/scene00/left/0000.png"));
    EXPECT_EQ(run_cli("subsample --width 64 --height 32 --fraction 0.1 --frame f0 --out " + (dir / "m").string()), 0);
    EXPECT_EQ(read_mask(dir / "m/f0.rsm").popcount(), 205u);
}
