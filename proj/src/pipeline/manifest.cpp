#include "corruptbench/pipeline/manifest.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "corruptbench/core/error.h"
#include "corruptbench/io/field_io.h"
#include "corruptbench/io/png_io.h"

namespace cb {

namespace fs = std::filesystem;

std::string frame_label(const std::string& scene, std::int64_t t, Camera camera) {
    return scene + " t=" + std::to_string(t) + " " + std::string(camera_name(camera));
}

std::string frame_stem(std::int64_t t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld", static_cast<long long>(t));
    return buf;
}

namespace {

std::optional<fs::path> optional_path(const nlohmann::json& j, const char* key, const fs::path& base) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return base / j.at(key).get<std::string>();
}

ViewEntry parse_view(const nlohmann::json& j, const fs::path& base, const std::string& where) {
    require(j.is_object(), where + ": view entry must be an object");
    require(j.contains("image"), where + ": view entry lacks 'image'");
    ViewEntry v;
    v.image = base / j.at("image").get<std::string>();
    v.disparity = optional_path(j, "disparity", base);
    v.flow = optional_path(j, "flow", base);
    v.depth = optional_path(j, "depth", base);
    if (j.contains("pose") && !j.at("pose").is_null()) {
        const auto values = j.at("pose").get<std::vector<double>>();
        require(values.size() == 12, where + ": pose must have 12 values (row-major 3x4)");
        Pose p{};
        std::copy(values.begin(), values.end(), p.begin());
        v.pose = p;
    }
    return v;
}

}  // namespace

Manifest Manifest::parse(const nlohmann::json& j, const fs::path& base_dir) {
    Manifest m;
    try {
        const auto& rig = j.at("rig");
        m.rig.focal_x = rig.at("focal_x").get<double>();
        m.rig.baseline = rig.at("baseline").get<double>();
        if (rig.contains("cx")) m.rig.cx = rig.at("cx").get<double>();
        if (rig.contains("cy")) m.rig.cy = rig.at("cy").get<double>();
        m.rig.frame_interval = rig.value("frame_interval", 0.04);
        m.rig.validate();
        if (j.contains("assets")) m.frost_dir = optional_path(j.at("assets"), "frost_dir", base_dir);

        std::set<std::string> ids;
        for (const auto& s : j.at("scenes")) {
            SceneEntry scene;
            scene.id = s.at("id").get<std::string>();
            require(!scene.id.empty() && scene.id.find('/') == std::string::npos,
                    "scene id must be non-empty and contain no '/'");
            require(ids.insert(scene.id).second, "duplicate scene id '" + scene.id + "'");
            for (const auto& f : s.at("frames")) {
                FrameEntry frame;
                frame.t = f.at("t").get<std::int64_t>();
                const std::string where = "scene " + scene.id + " t=" + std::to_string(frame.t);
                require(frame.t >= 0, where + ": time index must be >= 0");
                require(f.contains("left") && f.contains("right"), where + ": stereo pair incomplete");
                frame.left = parse_view(f.at("left"), base_dir, where + " left");
                frame.right = parse_view(f.at("right"), base_dir, where + " right");
                scene.frames.push_back(std::move(frame));
            }
            require(!scene.frames.empty(), "scene " + scene.id + " has no frames");
            std::sort(scene.frames.begin(), scene.frames.end(),
                      [](const FrameEntry& a, const FrameEntry& b) { return a.t < b.t; });
            for (std::size_t i = 1; i < scene.frames.size(); ++i) {
                require(scene.frames[i].t == scene.frames[i - 1].t + 1,
                        "scene " + scene.id + ": frames are not contiguous in time (t=" +
                            std::to_string(scene.frames[i - 1].t) + " then t=" + std::to_string(scene.frames[i].t) +
                            ")");
            }
            m.scenes.push_back(std::move(scene));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("malformed manifest: ") + e.what());
    }
    require(!m.scenes.empty(), "manifest has no scenes");
    return m;
}

Manifest Manifest::load(const fs::path& path) {
    const auto bytes = read_file_bytes(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("cannot parse manifest " + path.string() + ": " + e.what());
    }
    Manifest m = parse(j, path.parent_path());
    m.check_files();
    return m;
}

void Manifest::check_files() const {
    std::vector<std::string> missing;
    auto check = [&](const fs::path& p) {
        if (!fs::exists(p)) missing.push_back(p.string());
    };
    for (const auto& s : scenes) {
        for (const auto& f : s.frames) {
            for (const ViewEntry* v : {&f.left, &f.right}) {
                check(v->image);
                if (v->disparity) check(*v->disparity);
                if (v->flow) check(*v->flow);
                if (v->depth) check(*v->depth);
            }
        }
    }
    if (frost_dir) check(*frost_dir);
    if (!missing.empty()) {
        std::string msg = "manifest references missing files:";
        for (const auto& p : missing) msg += "\n  " + p;
        throw IoError(msg);
    }
}

std::size_t Manifest::frame_count() const {
    std::size_t n = 0;
    for (const auto& s : scenes) n += s.frames.size() * 2;
    return n;
}

ImageFrame load_view_image(const SceneEntry& scene, const FrameEntry& frame, Camera camera) {
    ImageFrame img = read_image(frame.view(camera).image);
    img.set_coord({scene.id, frame.t, camera});
    return img;
}

std::optional<DepthMap> load_view_depth(const ViewEntry& view, const CameraRig& rig) {
    if (view.depth) return read_depth(*view.depth);
    if (view.disparity) return depth_from_disparity(read_field(*view.disparity, FieldKind::Disparity1), rig);
    return std::nullopt;
}

}  // namespace cb
