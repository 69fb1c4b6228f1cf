// groundseg: LiDAR ground segmentation over SemanticKITTI-layout sequences.
//
// Subcommands: segment (write per-frame predictions), eval (score against
// labels), render (top-down confusion images), bench (stream cycle model).
// Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groundseg/ingest.hpp"
#include "groundseg/io.hpp"
#include "groundseg/metrics.hpp"
#include "groundseg/params.hpp"
#include "groundseg/propagate.hpp"
#include "groundseg/ransac.hpp"
#include "groundseg/render.hpp"
#include "groundseg/stream_model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace groundseg;

namespace {

struct CommonOpts {
    std::string dataset;
    std::string sequence = "00";
    std::string frames;  // "A..B", "A..", "..B" or a single index
    std::string sensor = "hdl64";
    std::string params_file;
    std::string neighbor;
    std::string method = "channel";
    int ransac_iters = 200;
    double ransac_thresh = 0.3;
    std::uint64_t ransac_seed = 42;
    int blocks = 3;
    double clock_hz = 160e6;
    int jobs = 1;
};

std::pair<std::optional<int>, std::optional<int>> parse_frame_range(const std::string& s) {
    if (s.empty()) {
        return {std::nullopt, std::nullopt};
    }
    const auto to_int = [](const std::string& part) -> std::optional<int> {
        if (part.empty()) {
            return std::nullopt;
        }
        std::size_t used = 0;
        const int v = std::stoi(part, &used);
        if (used != part.size() || v < 0) {
            throw std::invalid_argument("bad frame index: " + part);
        }
        return v;
    };
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const auto v = to_int(s);
        return {v, v};
    }
    return {to_int(s.substr(0, dots)), to_int(s.substr(dots + 2))};
}

std::string check_frame_range(const std::string& s) {
    try {
        parse_frame_range(s);
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    return {};
}

void add_dataset_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dataset", o.dataset, "Dataset root (SemanticKITTI layout)")
        ->envname("GROUNDSEG_DATASET")
        ->required();
    cmd->add_option("--sequence", o.sequence, "Sequence directory name")->capture_default_str();
    cmd->add_option("--frames", o.frames, "Frame range A..B (either side open), or one index")
        ->check(CLI::Validator(check_frame_range, "FRAMES"));
    cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

void add_method_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--sensor", o.sensor, "Sensor preset name or config file")
        ->capture_default_str();
    cmd->add_option("--params", o.params_file, "Segmentation parameter file (.json or .toml)");
    cmd->add_option("--neighbor", o.neighbor, "Flood-fill neighborhood override")
        ->check(CLI::IsMember({"four_way", "eight_way", "cross_eight_way"}));
    cmd->add_option("--method", o.method, "Segmentation method")
        ->check(CLI::IsMember({"channel", "stream", "ransac"}))
        ->capture_default_str();
    cmd->add_option("--iterations", o.ransac_iters, "RANSAC iterations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--thresh", o.ransac_thresh, "RANSAC inlier distance, meters")
        ->capture_default_str();
    cmd->add_option("--seed", o.ransac_seed, "RANSAC seed");
    cmd->add_option("--blocks", o.blocks, "Stream flood-fill blocks")->check(CLI::PositiveNumber);
    cmd->add_option("--clock-hz", o.clock_hz, "Stream clock rate")->capture_default_str();
}

SegParams resolve_params(const CommonOpts& o) {
    // the stream datapath fixes the repair window in hardware, so its
    // defaults differ from the software pipeline's
    const SegParams base =
        o.method == "stream" ? SegParams::stream_defaults() : SegParams{};
    SegParams p = o.params_file.empty() ? base : load_seg_params(o.params_file);
    if (!o.neighbor.empty()) {
        p.neighbor_mode = neighbor_mode_from_string(o.neighbor);
    }
    if (o.method == "stream") {
        p.flood_iterations = o.blocks;
    }
    p.validate();
    return p;
}

std::vector<std::uint8_t> predict(const PointCloud& cloud, const CommonOpts& o,
                                  const SensorConfig& cfg, const SegParams& p) {
    if (o.method == "ransac") {
        return ransac_ground(cloud, o.ransac_thresh, o.ransac_iters, o.ransac_seed).inliers;
    }
    const ProjectionResult proj = project(cloud, cfg);
    const LabelMask labels = o.method == "stream"
                                 ? run_pipeline(proj.image, p, o.blocks, o.clock_hz).first
                                 : segment(proj.image, p);
    return back_project(labels, proj);
}

std::vector<FrameRef> resolve_frames(const CommonOpts& o) {
    const auto [first, last] = parse_frame_range(o.frames);
    auto frames = list_frames(o.dataset, o.sequence, first, last);
    if (frames.empty()) {
        throw std::runtime_error("no frames in sequence " + o.sequence + " within the range");
    }
    return frames;
}

std::vector<std::uint8_t> load_gt(const FrameRef& frame, std::size_t n_points) {
    if (!frame.has_labels) {
        throw std::runtime_error("frame " + frame.id + " has no label file");
    }
    return ground_truth_mask(load_labels(frame.labels, n_points));
}

template <typename Fn>
void for_each_frame(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    const int spawn = std::min<std::size_t>(jobs, n);
    for (int w = 0; w < spawn; ++w) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < n; i = next++) {
                fn(i);
            }
        }));
    }
    for (auto& worker : workers) {
        worker.get();
    }
}

int run_segment(const CommonOpts& o, const fs::path& out_dir) {
    const SensorConfig cfg = load_sensor_config(o.sensor);
    const SegParams p = resolve_params(o);
    const auto frames = resolve_frames(o);
    fs::create_directories(out_dir);

    std::vector<std::size_t> point_counts(frames.size(), 0);
    for_each_frame(frames.size(), o.jobs, [&](std::size_t i) {
        const PointCloud cloud = load_scan(frames[i].scan);
        const auto mask = predict(cloud, o, cfg, p);
        point_counts[i] = cloud.size();
        write_prediction(out_dir / (frames[i].id + ".pred"), mask);
    });

    json manifest;
    manifest["sequence"] = o.sequence;
    manifest["method"] = o.method;
    manifest["sensor"] = {{"channels", cfg.channels}, {"width", cfg.horizontal_resolution}};
    manifest["neighbor_mode"] = to_string(p.neighbor_mode);
    manifest["frames"] = json::array();
    for (std::size_t i = 0; i < frames.size(); ++i) {
        manifest["frames"].push_back(
            {{"id", frames[i].id}, {"points", point_counts[i]}, {"file", frames[i].id + ".pred"}});
    }
    atomic_write(out_dir / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << frames.size() << " predictions to " << out_dir.string() << "\n";
    return 0;
}

int run_eval(const CommonOpts& o, const fs::path& out_dir, const std::string& pred_dir,
             const std::string& format) {
    const SensorConfig cfg = load_sensor_config(o.sensor);
    const SegParams p = resolve_params(o);
    const auto frames = resolve_frames(o);
    fs::create_directories(out_dir);

    std::vector<FrameScore> scores(frames.size());
    std::vector<std::string> ids(frames.size());
    for_each_frame(frames.size(), o.jobs, [&](std::size_t i) {
        const PointCloud cloud = load_scan(frames[i].scan);
        const auto gt = load_gt(frames[i], cloud.size());
        const auto pred = pred_dir.empty()
                              ? predict(cloud, o, cfg, p)
                              : read_prediction(fs::path(pred_dir) / (frames[i].id + ".pred"),
                                                cloud.size());
        scores[i] = score_frame(pred, gt, cloud);
        ids[i] = frames[i].id;
    });

    FrameScore mean;
    for (const auto& s : scores) {
        mean.f1_ri += s.f1_ri;
        mean.iou_ri += s.iou_ri;
        mean.iou_bev += s.iou_bev;
    }
    mean.f1_ri /= static_cast<double>(scores.size());
    mean.iou_ri /= static_cast<double>(scores.size());
    mean.iou_bev /= static_cast<double>(scores.size());
    const auto rows = distribution_report(scores);

    if (format == "json") {
        json out;
        out["frames"] = json::array();
        for (std::size_t i = 0; i < scores.size(); ++i) {
            out["frames"].push_back({{"id", ids[i]},
                                     {"f1_ri", scores[i].f1_ri},
                                     {"iou_ri", scores[i].iou_ri},
                                     {"iou_bev", scores[i].iou_bev}});
        }
        out["mean"] = {{"f1_ri", mean.f1_ri}, {"iou_ri", mean.iou_ri}, {"iou_bev", mean.iou_bev}};
        out["distribution"] = json::array();
        for (const auto& r : rows) {
            out["distribution"].push_back({{"metric", r.metric},
                                           {"bin_lo", r.bin_lo},
                                           {"bin_hi", r.bin_hi},
                                           {"pdf", r.pdf},
                                           {"cdf", r.cdf}});
        }
        atomic_write(out_dir / "results.json", out.dump(2) + "\n");
    } else {
        std::ostringstream score_csv;
        write_score_csv(score_csv, ids, scores);
        atomic_write(out_dir / "scores.csv", score_csv.str());
        std::ostringstream dist_csv;
        write_distribution_csv(dist_csv, rows);
        atomic_write(out_dir / "distribution.csv", dist_csv.str());
    }

    std::cout << "frames=" << scores.size() << " mean_f1_ri=" << std::fixed
              << std::setprecision(4) << mean.f1_ri << " mean_iou_ri=" << mean.iou_ri
              << " mean_iou_bev=" << mean.iou_bev << "\n";
    return 0;
}

int run_render(const CommonOpts& o, const fs::path& out_dir, const RenderConfig& rcfg) {
    const SensorConfig cfg = load_sensor_config(o.sensor);
    const SegParams p = resolve_params(o);
    const auto frames = resolve_frames(o);
    fs::create_directories(out_dir);

    for_each_frame(frames.size(), o.jobs, [&](std::size_t i) {
        const PointCloud cloud = load_scan(frames[i].scan);
        const auto gt = load_gt(frames[i], cloud.size());
        const auto pred = predict(cloud, o, cfg, p);
        write_ppm(out_dir / (frames[i].id + ".ppm"), render_bev(cloud, pred, gt, rcfg));
    });
    std::cout << "wrote " << frames.size() << " images to " << out_dir.string() << "\n";
    return 0;
}

int run_bench(const CommonOpts& o, const std::string& out_file) {
    const SensorConfig cfg = load_sensor_config(o.sensor);
    CommonOpts stream_opts = o;
    stream_opts.method = "stream";
    const SegParams p = resolve_params(stream_opts);
    // cycle counts depend only on the geometry, so an empty frame suffices
    const RangeImage img(cfg.channels, cfg.horizontal_resolution);
    const auto [labels, report] = run_pipeline(img, p, o.blocks, o.clock_hz);

    json out;
    out["channels"] = cfg.channels;
    out["width"] = cfg.horizontal_resolution;
    out["blocks"] = o.blocks;
    out["clock_hz"] = report.clock_hz;
    out["total_cycles"] = report.total_cycles;
    out["warmup_cycles"] = report.warmup_cycles;
    out["estimated_ms"] = report.estimated_seconds() * 1e3;
    out["stages"] = json::array();
    for (const auto& s : report.stages) {
        out["stages"].push_back({{"name", s.name}, {"warmup_cycles", s.warmup_cycles}});
    }
    const std::string text = out.dump(2) + "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        atomic_write(out_file, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LiDAR ground segmentation toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string out_path;
    std::string pred_dir;
    std::string format = "csv";
    RenderConfig rcfg;

    CLI::App* seg = app.add_subcommand("segment", "Write per-frame ground predictions");
    add_dataset_options(seg, opts);
    add_method_options(seg, opts);
    seg->add_option("--out", out_path, "Output directory")->required();

    CLI::App* eval = app.add_subcommand("eval", "Score predictions against the labels");
    add_dataset_options(eval, opts);
    add_method_options(eval, opts);
    eval->add_option("--out", out_path, "Report directory")->required();
    eval->add_option("--pred", pred_dir, "Score stored predictions instead of recomputing");
    eval->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI::App* render = app.add_subcommand("render", "Write top-down confusion images");
    add_dataset_options(render, opts);
    add_method_options(render, opts);
    render->add_option("--out", out_path, "Output directory")->required();
    render->add_option("--mpp", rcfg.meters_per_pixel, "Meters per pixel")
        ->capture_default_str();
    render->add_option("--extent", rcfg.extent_m, "Half-width of the square, meters")
        ->capture_default_str();
    render->add_flag("--polygons,!--no-polygons", rcfg.draw_polygons,
                     "Draw the BEV polygon outlines");

    CLI::App* bench = app.add_subcommand("bench", "Report the stream datapath cycle model");
    add_method_options(bench, opts);
    bench->add_option("--out", out_path, "Write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
        if (seg->parsed()) {
            return run_segment(opts, out_path);
        }
        if (eval->parsed()) {
            return run_eval(opts, out_path, pred_dir, format);
        }
        if (render->parsed()) {
            return run_render(opts, out_path, rcfg);
        }
        return run_bench(opts, out_path);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "groundseg: " << e.what() << "\n";
        return 1;
    }
}
