// corruptbench: batch front-end for corruption generation, evaluation, calibration and ranking.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "corruptbench/core/error.h"
#include "corruptbench/pipeline/commands.h"
#include "corruptbench/pipeline/synthetic.h"

namespace {

// Report to --out when given, else to stdout.
void emit(const nlohmann::json& report, const std::string& out) {
    if (out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        cb::write_json(out, report);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corruption robustness benchmark toolkit for stereo video, optical flow and scene flow"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    app.add_option("--seed", seed, "Master seed")->capture_default_str();
    app.add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", out, "Output root or report path");

    // synth
    auto* synth = app.add_subcommand("synth", "Write a synthetic stereo sequence and its manifest");
    int synth_scenes = 2, synth_frames = 2, synth_w = 128, synth_h = 96;
    synth->add_option("--scenes", synth_scenes, "Number of scenes")->capture_default_str();
    synth->add_option("--frames", synth_frames, "Frames per scene")->capture_default_str();
    synth->add_option("--width", synth_w, "Frame width in pixels")->capture_default_str();
    synth->add_option("--height", synth_h, "Frame height in pixels")->capture_default_str();

    // corrupt
    auto* corrupt = app.add_subcommand("corrupt", "Corrupt every frame of a manifest");
    std::string manifest_path, kinds_text = "all", preset_path;
    corrupt->add_option("--manifest", manifest_path, "Manifest JSON")->required();
    corrupt->add_option("--kinds", kinds_text, "Comma-separated kinds or 'all'")->capture_default_str();
    corrupt->add_option("--preset", preset_path, "Severity preset file");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Robustness of clean vs corrupted predictions");
    cb::EvaluateConfig eval;
    std::string metrics_text, eval_kinds, masks_dir, gt_dir;
    evaluate->add_option("--task", eval.task, "flow, stereo or sceneflow")->capture_default_str();
    evaluate->add_option("--model", eval.model, "Model id")->capture_default_str();
    evaluate->add_option("--clean", eval.clean, "Clean prediction tree")->required();
    evaluate->add_option("--corrupt", eval.corrupt, "Root holding one prediction tree per kind")->required();
    evaluate->add_option("--masks", masks_dir, "Evaluation mask tree (RSM1)");
    evaluate->add_option("--gt", gt_dir, "Ground-truth tree for the clean error row");
    evaluate->add_option("--metrics", metrics_text, "Comma-separated metrics (task defaults)");
    evaluate->add_option("--kinds", eval_kinds, "Kinds to evaluate (all present by default)");

    // rank
    auto* rank = app.add_subcommand("rank", "Rank models from robustness reports");
    std::vector<std::string> rank_reports;
    std::string rank_matrix, rank_method = "schulze", rank_metric = "epe";
    rank->add_option("--report", rank_reports, "Robustness report (repeatable)");
    rank->add_option("--matrix", rank_matrix, "Pairwise comparison matrix file");
    rank->add_option("--method", rank_method, "schulze, average or median")->capture_default_str();
    rank->add_option("--metric", rank_metric, "Metric column")->capture_default_str();

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Tune severities to an SSIM target");
    std::string cal_kinds, cal_manifest, cal_preset;
    std::optional<double> cal_target;
    calibrate->add_option("--kind", cal_kinds, "Comma-separated kinds or 'all'")->required();
    calibrate->add_option("--target", cal_target, "Target SSIM (0.2 for noises, 0.7 otherwise)");
    calibrate->add_option("--manifest", cal_manifest, "Calibration corpus (shipped synthetic corpus by default)");
    calibrate->add_option("--preset", cal_preset, "Severity preset file to write or merge into")->required();

    // severity
    auto* severity = app.add_subcommand("severity", "Mean SSIM per kind at preset or default parameters");
    std::string sev_kinds = "all", sev_manifest, sev_preset;
    severity->add_option("--kinds", sev_kinds, "Comma-separated kinds or 'all'")->capture_default_str();
    severity->add_option("--manifest", sev_manifest, "Measurement corpus (shipped synthetic corpus by default)");
    severity->add_option("--preset", sev_preset, "Severity preset file (defaults when absent)");

    // subsample
    auto* subsample = app.add_subcommand("subsample", "Write stratified evaluation masks");
    cb::SubsampleConfig sub;
    std::string sub_manifest;
    bool keep_hero = false;
    subsample->add_option("--width", sub.width, "Frame width for --frame ids");
    subsample->add_option("--height", sub.height, "Frame height for --frame ids");
    subsample->add_option("--fraction", sub.fraction, "Kept pixel fraction")->required();
    subsample->add_option("--frame", sub.frames, "Frame id (repeatable)");
    subsample->add_option("--hero", sub.hero, "Hero frame id (repeatable)");
    subsample->add_option("--manifest", sub_manifest, "One mask per manifest frame");
    subsample->add_flag("--keep-hero-full", keep_hero, "Keep hero frames at full resolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) {
            cb::require(!out.empty(), "synth needs --out");
            const auto path = cb::write_synthetic_manifest(out, synth_scenes, synth_frames, synth_w, synth_h, seed);
            std::cout << path.string() << "\n";
        } else if (corrupt->parsed()) {
            cb::RunConfig cfg;
            cfg.kinds = cb::parse_kind_list(kinds_text);
            if (!preset_path.empty()) cfg.preset = preset_path;
            cfg.seed = seed;
            cfg.out = out;
            cfg.jobs = jobs;
            const auto manifest = cb::Manifest::load(manifest_path);
            const auto report = cb::cmd_corrupt(manifest, cfg);
            std::cout << "wrote " << report.at("frames_written").get<std::size_t>() << " frames under " << out
                      << "\n";
        } else if (evaluate->parsed()) {
            if (!metrics_text.empty()) eval.metrics = cb::parse_metric_list(metrics_text);
            if (!eval_kinds.empty()) eval.kinds = cb::parse_kind_list(eval_kinds);
            if (!masks_dir.empty()) eval.masks = masks_dir;
            if (!gt_dir.empty()) eval.ground_truth = gt_dir;
            const auto report = cb::cmd_evaluate(eval);
            if (!out.empty()) {
                cb::write_json(out, report.to_json());
                std::cout << report.format_table();
            } else {
                std::cout << report.to_json().dump(2) << "\n";
            }
        } else if (rank->parsed()) {
            cb::RankConfig cfg;
            for (const auto& r : rank_reports) cfg.reports.emplace_back(r);
            if (!rank_matrix.empty()) cfg.matrix = rank_matrix;
            cfg.method = cb::rank_method_from_name(rank_method);
            cfg.metric = cb::metric_from_name(rank_metric);
            const auto report = cb::cmd_rank(cfg);
            emit(report, out);
            if (!out.empty()) {
                for (const auto& id : report.at("ranking").at("order")) std::cout << id.get<std::string>() << "\n";
            }
        } else if (calibrate->parsed()) {
            cb::CalibrateConfig cfg;
            cfg.kinds = cb::parse_kind_list(cal_kinds);
            cfg.target = cal_target;
            if (!cal_manifest.empty()) cfg.manifest = cal_manifest;
            cfg.preset = cal_preset;
            cfg.seed = seed;
            cfg.jobs = jobs;
            emit(cb::cmd_calibrate(cfg), out);
        } else if (severity->parsed()) {
            cb::SeverityConfig cfg;
            cfg.kinds = cb::parse_kind_list(sev_kinds);
            if (!sev_manifest.empty()) cfg.manifest = sev_manifest;
            if (!sev_preset.empty()) cfg.preset = sev_preset;
            cfg.seed = seed;
            cfg.jobs = jobs;
            emit(cb::cmd_severity(cfg), out);
        } else if (subsample->parsed()) {
            sub.seed = seed;
            sub.out = out;
            sub.policy = keep_hero ? cb::HeroPolicy::KeepFull : cb::HeroPolicy::Subsample;
            if (!sub_manifest.empty()) sub.manifest = sub_manifest;
            const auto report = cb::cmd_subsample(sub);
            for (const auto& m : report.at("masks")) {
                std::cout << m.at("frame").get<std::string>() << " " << m.at("popcount").get<std::size_t>() << "\n";
            }
        }
    } catch (const cb::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cb::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "I/O error: malformed input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
