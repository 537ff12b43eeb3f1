#include "corruptbench/pipeline/commands.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "corruptbench/core/error.h"
#include "corruptbench/core/parallel.h"
#include "corruptbench/corruption/params_json.h"
#include "corruptbench/io/field_io.h"
#include "corruptbench/io/png_io.h"
#include "corruptbench/scene/scene_engine.h"

namespace cb {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool needs_flow(CorruptionKind k) { return k == CorruptionKind::MotionBlur; }

bool needs_depth(CorruptionKind k) {
    return k == CorruptionKind::Fog || k == CorruptionKind::Snow || k == CorruptionKind::Rain;
}

bool is_weather(CorruptionKind k) { return k == CorruptionKind::Snow || k == CorruptionKind::Rain; }

std::string name_of(CorruptionKind k) { return std::string(kind_name(k)); }

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
    const std::string body = text + "\n";
    write_file_bytes(path, std::vector<std::uint8_t>(body.begin(), body.end()));
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2)); }

nlohmann::json read_json(const fs::path& path) {
    const auto bytes = read_file_bytes(path);
    try {
        return nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("cannot parse " + path.string() + ": " + e.what());
    }
}

std::vector<CorruptionKind> parse_kind_list(const std::string& text) {
    const auto names = split_list(text);
    require(!names.empty(), "empty corruption list");
    std::vector<CorruptionKind> out;
    for (const auto& n : names) {
        if (n == "all") {
            for (CorruptionKind k : all_corruption_kinds()) out.push_back(k);
        } else {
            out.push_back(kind_from_name(n));
        }
    }
    std::vector<CorruptionKind> unique;
    for (CorruptionKind k : out) {
        if (std::find(unique.begin(), unique.end(), k) == unique.end()) unique.push_back(k);
    }
    return unique;
}

std::vector<MetricKind> parse_metric_list(const std::string& text) {
    std::vector<MetricKind> out;
    for (const auto& n : split_list(text)) {
        const MetricKind m = metric_from_name(n);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    require(!out.empty(), "empty metric list");
    return out;
}

std::vector<std::string> missing_inputs(const Manifest& manifest, CorruptionKind kind) {
    std::vector<std::string> missing;
    if (!needs_flow(kind) && !needs_depth(kind)) return missing;
    for (const auto& scene : manifest.scenes) {
        for (const auto& frame : scene.frames) {
            for (Camera cam : {Camera::Left, Camera::Right}) {
                const ViewEntry& v = frame.view(cam);
                const bool ok = needs_flow(kind) ? v.flow.has_value() : (v.depth || v.disparity);
                if (!ok) missing.push_back(frame_label(scene.id, frame.t, cam));
            }
        }
    }
    return missing;
}

namespace {

CorruptionParams run_params(CorruptionKind kind, const std::optional<SeverityPreset>& preset,
                            const Manifest& manifest, bool& from_preset) {
    CorruptionParams params = default_params(kind);
    from_preset = false;
    if (preset) {
        if (const auto it = preset->params.find(kind); it != preset->params.end()) {
            params = it->second;
            from_preset = true;
        }
    }
    if (auto* frost = std::get_if<FrostParams>(&params); frost && frost->texture_dir.empty() && manifest.frost_dir) {
        frost->texture_dir = manifest.frost_dir->string();
    }
    return params;
}

fs::path frame_path(const fs::path& out, CorruptionKind kind, const std::string& scene, Camera cam,
                    std::int64_t t, const char* ext) {
    return out / name_of(kind) / scene / std::string(camera_name(cam)) / (frame_stem(t) + ext);
}

void write_result(const fs::path& out, CorruptionKind kind, const CorruptionResult& r) {
    const FrameCoord& c = r.provenance.coord;
    write_image(r.image, frame_path(out, kind, c.scene_id, c.camera, c.time_index, ".png"));
    write_json(frame_path(out, kind, c.scene_id, c.camera, c.time_index, ".json"),
               {{"version", kSchemaVersion}, {"provenance", r.provenance.to_json()}});
}

struct Job {
    CorruptionKind kind;
    std::size_t scene;
    std::size_t frame;  // unused for weather jobs
    Camera camera;
};

}  // namespace

nlohmann::json cmd_corrupt(const Manifest& manifest, const RunConfig& config) {
    require(!config.kinds.empty(), "no corruption kinds selected");
    require(!config.out.empty(), "output root (--out) is required");
    require(config.jobs >= 1, "--jobs must be >= 1");

    std::string problems;
    for (CorruptionKind k : config.kinds) {
        const auto missing = missing_inputs(manifest, k);
        if (missing.empty()) continue;
        problems += "\n" + name_of(k) + (needs_flow(k) ? " needs a flow file" : " needs a depth or disparity file") +
                    " for " + std::to_string(missing.size()) + " frame(s):";
        for (const auto& label : missing) problems += "\n  " + label;
    }
    if (!problems.empty()) throw ContractError("missing scene inputs:" + problems);

    std::optional<SeverityPreset> preset;
    if (config.preset) preset = SeverityPreset::load(*config.preset);

    std::map<CorruptionKind, CorruptionSpec> specs;
    nlohmann::json kinds_report = nlohmann::json::object();
    for (CorruptionKind k : config.kinds) {
        bool from_preset = false;
        CorruptionSpec spec(run_params(k, preset, manifest, from_preset), config.seed);
        kinds_report[name_of(k)] = {{"params", params_to_json(spec.params())},
                                    {"source", from_preset ? "preset" : "default"}};
        specs.emplace(k, std::move(spec));
    }

    std::vector<Job> jobs;
    for (CorruptionKind k : config.kinds) {
        for (std::size_t s = 0; s < manifest.scenes.size(); ++s) {
            if (is_weather(k)) {
                jobs.push_back({k, s, 0, Camera::Left});
                continue;
            }
            for (std::size_t f = 0; f < manifest.scenes[s].frames.size(); ++f) {
                for (Camera cam : {Camera::Left, Camera::Right}) jobs.push_back({k, s, f, cam});
            }
        }
    }

    const CameraRig& rig = manifest.rig;
    parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
        const Job& job = jobs[i];
        const CorruptionSpec& spec = specs.at(job.kind);
        const SceneEntry& scene = manifest.scenes[job.scene];
        if (is_weather(job.kind)) {
            std::vector<ImageFrame> images;
            std::vector<DepthMap> depths;
            images.reserve(scene.frames.size() * 2);
            depths.reserve(scene.frames.size() * 2);
            std::vector<scene::StereoFrame> frames;
            for (const FrameEntry& f : scene.frames) {
                for (Camera cam : {Camera::Left, Camera::Right}) {
                    images.push_back(load_view_image(scene, f, cam));
                    depths.push_back(*load_view_depth(f.view(cam), rig));
                }
            }
            for (std::size_t f = 0; f < scene.frames.size(); ++f) {
                frames.push_back({&images[2 * f], &images[2 * f + 1], &depths[2 * f], &depths[2 * f + 1],
                                  scene.frames[f].left.pose});
            }
            for (const auto& pair : scene::corrupt_weather(frames, rig, spec)) {
                for (const CorruptionResult& r : pair) write_result(config.out, job.kind, r);
            }
            return;
        }
        const FrameEntry& frame = scene.frames[job.frame];
        const ViewEntry& view = frame.view(job.camera);
        const ImageFrame image = load_view_image(scene, frame, job.camera);
        std::optional<PredictionField> flow;
        std::optional<DepthMap> depth;
        scene::SceneInputs inputs;
        inputs.rig = &rig;
        if (needs_flow(job.kind)) {
            flow = read_field(*view.flow, FieldKind::Flow);
            inputs.flow = &*flow;
        }
        if (needs_depth(job.kind)) {
            depth = load_view_depth(view, rig);
            inputs.depth = &*depth;
        }
        const SeedContext ctx = SeedContext::for_frame(config.seed, image.coord(), job.kind);
        write_result(config.out, job.kind, scene::corrupt_frame(image, spec, ctx, inputs));
    });

    nlohmann::json report{{"version", kSchemaVersion},
                          {"seed", config.seed},
                          {"kinds", kinds_report},
                          {"scenes", manifest.scenes.size()},
                          {"frames_per_kind", manifest.frame_count()},
                          {"frames_written", manifest.frame_count() * config.kinds.size()}};
    write_json(config.out / "corrupt_report.json", report);
    return report;
}

std::vector<MetricKind> default_metrics(const std::string& task) {
    if (task == "flow") return {MetricKind::Epe, MetricKind::OnePx, MetricKind::Fl};
    if (task == "stereo") return {MetricKind::Abs, MetricKind::OnePx, MetricKind::D1};
    if (task == "sceneflow") return {MetricKind::Epe, MetricKind::OnePx, MetricKind::Fl, MetricKind::D1, MetricKind::D2};
    throw ContractError("unknown task '" + task + "' (expected flow, stereo or sceneflow)");
}

namespace {

// Field kind of a prediction file: *.disp2.rsf is a target-frame disparity, otherwise
// the arity decides (2 = flow, 1 = first-frame disparity).
PredictionField read_prediction(const fs::path& path) {
    const std::string name = path.filename().string();
    const bool disp2 = name.size() >= 10 && name.compare(name.size() - 10, 10, ".disp2.rsf") == 0;
    return read_field(path, disp2 ? std::optional<FieldKind>(FieldKind::Disparity2) : std::nullopt);
}

bool task_accepts(const std::string& task, FieldKind k) {
    if (task == "flow") return k == FieldKind::Flow;
    if (task == "stereo") return k == FieldKind::Disparity1;
    return true;
}

// In the sceneflow task 1px and EPE describe the flow component only.
bool counts_for(const std::string& task, MetricKind m, FieldKind k) {
    if (!metric_applies(m, k)) return false;
    if (task == "sceneflow" && (m == MetricKind::OnePx || m == MetricKind::Epe)) return k == FieldKind::Flow;
    return true;
}

std::vector<fs::path> prediction_files(const fs::path& root) {
    if (!fs::is_directory(root)) throw IoError("prediction directory not found: " + root.string());
    std::vector<fs::path> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path().extension() == ".rsf") out.push_back(fs::relative(e.path(), root));
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw IoError("no .rsf prediction files under " + root.string());
    return out;
}

fs::path mask_path(const fs::path& masks, const fs::path& rel) {
    std::string stem = rel.filename().string();
    stem = stem.substr(0, stem.find('.'));
    return masks / rel.parent_path() / (stem + ".rsm");
}

struct Pool {
    double sum = 0.0;
    double count = 0.0;
    void add(double value, std::size_t pixels) {
        sum += value * static_cast<double>(pixels);
        count += static_cast<double>(pixels);
    }
};

// Pixel-pooled metrics of `other` against `reference` over all files.
std::map<MetricKind, double> pooled(const EvaluateConfig& cfg, const std::vector<MetricKind>& metrics,
                                    const std::vector<fs::path>& files, const fs::path& reference_root,
                                    const fs::path& other_root, bool accuracy_mode) {
    std::map<MetricKind, Pool> pools;
    for (const fs::path& rel : files) {
        const fs::path ref_path = reference_root / rel;
        const fs::path other_path = other_root / rel;
        if (!fs::exists(other_path)) throw IoError("missing prediction file: " + other_path.string());
        const PredictionField ref = read_prediction(ref_path);
        const PredictionField other = read_prediction(other_path);
        require(ref.kind() == other.kind() && ref.width() == other.width() && ref.height() == other.height(),
                "field shape or kind differs: " + ref_path.string() + " vs " + other_path.string());
        require(task_accepts(cfg.task, ref.kind()),
                "file " + ref_path.string() + " holds a field the " + cfg.task + " task does not evaluate");
        PixelMask mask = PixelMask::full(ref.width(), ref.height());
        if (cfg.masks) {
            const fs::path mp = mask_path(*cfg.masks, rel);
            mask = read_mask(mp);
            require(mask.width() == ref.width() && mask.height() == ref.height(),
                    "mask size differs from the field: " + mp.string());
        }
        const std::size_t n = mask.popcount();
        if (n == 0) continue;
        for (MetricKind m : metrics) {
            if (!counts_for(cfg.task, m, ref.kind())) continue;
            const double v = accuracy_mode ? accuracy(other, ref, mask, m) : robustness(ref, other, mask, m);
            pools[m].add(v, n);
        }
    }
    std::map<MetricKind, double> out;
    for (MetricKind m : metrics) {
        const auto it = pools.find(m);
        require(it != pools.end() && it->second.count > 0.0,
                std::string("metric ") + std::string(metric_name(m)) + " applies to no evaluated pixels of the " +
                    cfg.task + " task");
        out[m] = it->second.sum / it->second.count;
    }
    return out;
}

}  // namespace

RobustnessReport cmd_evaluate(const EvaluateConfig& config) {
    RobustnessReport report;
    report.model = config.model;
    report.task = config.task;
    report.metrics = config.metrics.empty() ? default_metrics(config.task) : config.metrics;
    default_metrics(config.task);  // validates the task name

    const auto files = prediction_files(config.clean);
    std::vector<CorruptionKind> kinds = config.kinds;
    if (kinds.empty()) {
        for (CorruptionKind k : all_corruption_kinds()) {
            if (fs::is_directory(config.corrupt / name_of(k))) kinds.push_back(k);
        }
        require(!kinds.empty(), "no corruption directories under " + config.corrupt.string());
    }
    for (CorruptionKind k : kinds) {
        const fs::path dir = config.corrupt / name_of(k);
        if (!fs::is_directory(dir)) throw IoError("missing corruption directory: " + dir.string());
        report.rows.push_back({name_of(k), pooled(config, report.metrics, files, config.clean, dir, false)});
    }
    if (config.ground_truth) {
        report.clean_error = pooled(config, report.metrics, files, *config.ground_truth, config.clean, true);
    }
    return report;
}

nlohmann::json cmd_rank(const RankConfig& config) {
    nlohmann::json out{{"version", kSchemaVersion}, {"method", rank_method_name(config.method)}};
    if (config.matrix) {
        require(config.reports.empty(), "give either a pairwise matrix or reports, not both");
        require(config.method == RankMethod::Schulze, "a pairwise matrix can only be ranked with schulze");
        const PairwiseMatrix m = PairwiseMatrix::from_json(read_json(*config.matrix));
        out["matrix"] = m.to_json();
        out["ranking"] = schulze_rank(m).to_json();
        return out;
    }
    require(config.reports.size() >= 2, "ranking needs at least two reports");
    std::vector<RobustnessReport> reports;
    for (const auto& p : config.reports) {
        try {
            reports.push_back(RobustnessReport::from_json(read_json(p)));
        } catch (const ContractError& e) {
            throw ContractError(p.string() + ": " + e.what());
        }
    }
    std::vector<std::string> corruptions;
    for (const auto& row : reports.front().rows) corruptions.push_back(row.corruption);
    std::vector<ModelScores> tables;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        ModelScores s{reports[i].model, {}};
        require(reports[i].rows.size() == corruptions.size(),
                config.reports[i].string() + ": corruption rows differ from " + config.reports[0].string());
        for (const auto& name : corruptions) {
            const auto it = std::find_if(reports[i].rows.begin(), reports[i].rows.end(),
                                         [&](const auto& r) { return r.corruption == name; });
            require(it != reports[i].rows.end(), config.reports[i].string() + ": no row for " + name);
            const auto v = it->values.find(config.metric);
            require(v != it->values.end(), config.reports[i].string() + ": row " + name + " lacks metric " +
                                               std::string(metric_name(config.metric)));
            s.values.push_back(v->second);
        }
        tables.push_back(std::move(s));
    }
    out["metric"] = metric_name(config.metric);
    out["corruptions"] = corruptions;
    const PairwiseMatrix m = build_matrix(tables);
    out["matrix"] = m.to_json();
    out["ranking"] = config.method == RankMethod::Schulze ? schulze_rank(m).to_json()
                                                          : score_rank(tables, config.method).to_json();
    return out;
}

std::vector<CalibrationSample> manifest_samples(const Manifest& manifest) {
    std::vector<CalibrationSample> out;
    for (const auto& scene : manifest.scenes) {
        for (const auto& frame : scene.frames) {
            CalibrationSample s{load_view_image(scene, frame, Camera::Left), std::nullopt, std::nullopt};
            if (frame.left.flow) s.flow = read_field(*frame.left.flow, FieldKind::Flow);
            s.depth = load_view_depth(frame.left, manifest.rig);
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

struct SampleSet {
    std::vector<CalibrationSample> samples;
    CameraRig rig;
    std::string source;
};

SampleSet load_samples(const std::optional<fs::path>& manifest_path) {
    SampleSet set;
    if (manifest_path) {
        const Manifest m = Manifest::load(*manifest_path);
        set.samples = manifest_samples(m);
        set.rig = m.rig;
        set.source = manifest_path->string();
    } else {
        set.samples = synthetic_calibration_samples(10, &set.rig);
        set.source = "synthetic";
    }
    return set;
}

void check_sample_inputs(CorruptionKind k, const std::vector<CalibrationSample>& samples) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const FrameCoord& c = samples[i].image.coord();
        if (needs_flow(k) && !samples[i].flow) {
            throw ContractError(name_of(k) + " needs flow for " + frame_label(c.scene_id, c.time_index, c.camera));
        }
        if (needs_depth(k) && !samples[i].depth) {
            throw ContractError(name_of(k) + " needs depth or disparity for " +
                                frame_label(c.scene_id, c.time_index, c.camera));
        }
    }
}

}  // namespace

nlohmann::json cmd_calibrate(const CalibrateConfig& config) {
    require(!config.kinds.empty(), "no corruption kinds selected");
    require(!config.preset.empty(), "a preset output path is required");
    if (config.target) require(*config.target > 0.0 && *config.target < 1.0, "--target must lie in (0,1)");
    const SampleSet set = load_samples(config.manifest);
    SeverityPreset preset;
    nlohmann::json results = nlohmann::json::array();
    for (CorruptionKind k : config.kinds) {
        check_sample_inputs(k, set.samples);
        CalibrationTarget target = CalibrationTarget::for_kind(k);
        if (config.target) target.ssim = *config.target;
        CalibrationOptions opt;
        opt.seed = config.seed;
        opt.jobs = config.jobs;
        const CalibrationResult r = calibrate(k, set.samples, set.rig, target, opt);
        preset.add(r);
        results.push_back({{"kind", name_of(k)},
                           {"target", target.ssim},
                           {"theta", r.theta},
                           {"ssim", r.ssim},
                           {"iterations", r.iterations},
                           {"converged", r.converged},
                           {"params", params_to_json(r.params)}});
    }
    preset.merge_into(config.preset);
    return {{"version", kSchemaVersion},
            {"corpus", set.source},
            {"frames", set.samples.size()},
            {"preset", config.preset.string()},
            {"results", results}};
}

nlohmann::json cmd_severity(const SeverityConfig& config) {
    require(!config.kinds.empty(), "no corruption kinds selected");
    const SampleSet set = load_samples(config.manifest);
    std::optional<SeverityPreset> preset;
    if (config.preset) preset = SeverityPreset::load(*config.preset);
    std::vector<CorruptionSpec> specs;
    for (CorruptionKind k : config.kinds) {
        check_sample_inputs(k, set.samples);
        CorruptionParams p = default_params(k);
        if (preset) {
            if (const auto it = preset->params.find(k); it != preset->params.end()) p = it->second;
        }
        specs.emplace_back(p, config.seed);
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const SeverityRow& r : verify_severity(specs, set.samples, set.rig, config.jobs)) {
        rows.push_back({{"kind", name_of(r.kind)},
                        {"ssim", r.mean_ssim},
                        {"reference_ssim", r.reference_ssim},
                        {"frames", r.frames}});
    }
    return {{"version", kSchemaVersion}, {"corpus", set.source}, {"rows", rows}};
}

nlohmann::json cmd_subsample(const SubsampleConfig& config) {
    require(!config.out.empty(), "output directory (--out) is required");
    struct Target {
        std::string id;
        int width;
        int height;
    };
    std::vector<Target> targets;
    for (const auto& id : config.frames) {
        require(config.width > 0 && config.height > 0, "--width and --height are required with --frame");
        targets.push_back({id, config.width, config.height});
    }
    if (config.manifest) {
        const Manifest m = Manifest::load(*config.manifest);
        for (const auto& scene : m.scenes) {
            for (const auto& frame : scene.frames) {
                for (Camera cam : {Camera::Left, Camera::Right}) {
                    const ImageFrame img = read_image(frame.view(cam).image);
                    targets.push_back({scene.id + "/" + std::string(camera_name(cam)) + "/" + frame_stem(frame.t),
                                       img.width(), img.height()});
                }
            }
        }
    }
    require(!targets.empty(), "no frames to subsample (use --frame or --manifest)");
    for (const auto& h : config.hero) {
        require(std::any_of(targets.begin(), targets.end(), [&](const Target& t) { return t.id == h; }),
                "hero frame '" + h + "' is not among the frames");
    }
    nlohmann::json masks = nlohmann::json::array();
    for (const Target& t : targets) {
        require(!t.id.empty() && t.id.find("..") == std::string::npos, "invalid frame id '" + t.id + "'");
        const bool hero = std::find(config.hero.begin(), config.hero.end(), t.id) != config.hero.end();
        const PixelMask mask = make_mask(t.width, t.height, config.fraction, config.seed, t.id, hero, config.policy);
        write_mask(mask, config.out / (t.id + ".rsm"));
        masks.push_back({{"frame", t.id},
                         {"width", t.width},
                         {"height", t.height},
                         {"hero", hero},
                         {"popcount", mask.popcount()}});
    }
    nlohmann::json report{{"version", kSchemaVersion},
                          {"fraction", config.fraction},
                          {"seed", config.seed},
                          {"hero_policy", config.policy == HeroPolicy::Subsample ? "subsample" : "keep_full"},
                          {"masks", masks}};
    write_json(config.out / "subsample_report.json", report);
    return report;
}

}  // namespace cb
