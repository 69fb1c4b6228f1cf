#include "groundseg/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace groundseg {

namespace {

std::vector<char> read_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    const auto size = static_cast<std::size_t>(in.tellg());
    std::vector<char> bytes(size);
    in.seekg(0);
    if (size > 0 && !in.read(bytes.data(), static_cast<std::streamsize>(size))) {
        throw std::runtime_error("short read: " + path.string());
    }
    return bytes;
}

}  // namespace

PointCloud load_scan(const std::filesystem::path& path) {
    const auto bytes = read_binary(path);
    if (bytes.size() % 16 != 0) {
        throw std::runtime_error("scan size not a multiple of 16 bytes: " + path.string());
    }
    const std::size_t n = bytes.size() / 16;
    PointCloud cloud;
    cloud.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        float f[4];
        std::memcpy(f, bytes.data() + i * 16, 16);
        if (!std::isfinite(f[0]) || !std::isfinite(f[1]) || !std::isfinite(f[2])) {
            throw std::runtime_error("non-finite coordinate at point " + std::to_string(i) +
                                     " in " + path.string());
        }
        cloud.points[i] = Point{f[0], f[1], f[2], f[3]};
    }
    return cloud;
}

std::vector<std::uint16_t> load_labels(const std::filesystem::path& path, std::size_t n_points) {
    const auto bytes = read_binary(path);
    if (bytes.size() != n_points * 4) {
        throw std::runtime_error("label size mismatch (" + std::to_string(bytes.size()) +
                                 " bytes for " + std::to_string(n_points) + " points): " +
                                 path.string());
    }
    std::vector<std::uint16_t> classes(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        std::uint32_t raw = 0;
        std::memcpy(&raw, bytes.data() + i * 4, 4);
        classes[i] = static_cast<std::uint16_t>(raw & 0xFFFFu);
    }
    return classes;
}

std::vector<std::uint8_t> ground_truth_mask(const std::vector<std::uint16_t>& classes) {
    std::vector<std::uint8_t> mask(classes.size(), 0);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (const std::uint16_t g : kGroundClasses) {
            if (classes[i] == g) {
                mask[i] = 1;
                break;
            }
        }
    }
    return mask;
}

ProjectionResult project(const PointCloud& cloud, const SensorConfig& cfg) {
    cfg.validate();
    const int h = cfg.channels;
    const int w = cfg.horizontal_resolution;
    constexpr double kPi = std::numbers::pi;
    const double fov_span = cfg.fov_up_deg - cfg.fov_down_deg;

    ProjectionResult out;
    out.image = RangeImage(h, w);
    out.index_map.resize(cloud.size());
    out.cell_point = Grid<std::int32_t>(h, w, -1);

    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point& p = cloud.points[i];
        const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        if (r <= 0.0 || r > cfg.max_range_m) {
            out.index_map[i] = PointIndex{-1, -1, PointPlacement::Dropped};
            ++out.dropped;
            continue;
        }
        const double yaw = std::atan2(p.y, p.x);
        const double pitch = std::asin(p.z / r);
        const double pitch_deg = pitch * 180.0 / kPi;

        int col = static_cast<int>(std::floor(w * (0.5 - yaw / (2.0 * kPi))));
        col = ((col % w) + w) % w;
        int row = static_cast<int>(std::floor(h * (cfg.fov_up_deg - pitch_deg) / fov_span));
        row = std::clamp(row, 0, h - 1);

        auto& img = out.image;
        const std::int32_t incumbent = out.cell_point.at(row, col);
        const bool wins = incumbent < 0 || r < img.range.at(row, col);
        if (wins) {
            if (incumbent >= 0) {
                out.index_map[incumbent].placement = PointPlacement::Shadowed;
            }
            img.range.at(row, col) = r;
            img.pitch.at(row, col) = pitch;
            img.yaw.at(row, col) = yaw;
            img.valid.at(row, col) = 1;
            img.pitch_valid.at(row, col) = 1;
            out.cell_point.at(row, col) = static_cast<std::int32_t>(i);
            out.index_map[i] = PointIndex{row, col, PointPlacement::Owner};
        } else {
            out.index_map[i] = PointIndex{row, col, PointPlacement::Shadowed};
        }
    }
    return out;
}

Grid<std::uint8_t> mask_to_grid(const std::vector<std::uint8_t>& point_mask,
                                const ProjectionResult& proj) {
    if (point_mask.size() != proj.index_map.size()) {
        throw std::invalid_argument("mask_to_grid: mask size does not match projection");
    }
    const int h = proj.image.height;
    const int w = proj.image.width;
    Grid<std::uint8_t> grid(h, w, 0);
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            const std::int32_t idx = proj.cell_point.at(row, col);
            if (idx >= 0 && point_mask[static_cast<std::size_t>(idx)]) {
                grid.at(row, col) = 1;
            }
        }
    }
    return grid;
}

}  // namespace groundseg
