#include "groundseg/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace groundseg {

namespace {

void draw_line(Raster& img, int x0, int y0, int x1, int y1, Rgb color) {
    // Bresenham
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        if (x0 >= 0 && x0 < img.width && y0 >= 0 && y0 < img.height) {
            img.at(x0, y0) = color;
        }
        if (x0 == x1 && y0 == y1) {
            break;
        }
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void draw_polygon(Raster& img, const BevRadialPolygon& poly, const RenderConfig& cfg,
                  Rgb color) {
    constexpr double kStep = 2.0 * std::numbers::pi / BevRadialPolygon::kSectors;
    const double scale = 1.0 / cfg.meters_per_pixel;
    const int cx = img.width / 2;
    const int cy = img.height / 2;
    auto vertex = [&](int i, int& px, int& py) {
        const double a = (i + 0.5) * kStep;
        const double x = poly.radii[i] * std::cos(a);
        const double y = poly.radii[i] * std::sin(a);
        px = cx + static_cast<int>(std::lround(x * scale));
        py = cy - static_cast<int>(std::lround(y * scale));  // +y points up on screen
    };
    for (int i = 0; i < BevRadialPolygon::kSectors; ++i) {
        int x0, y0, x1, y1;
        vertex(i, x0, y0);
        vertex((i + 1) % BevRadialPolygon::kSectors, x1, y1);
        draw_line(img, x0, y0, x1, y1, color);
    }
}

}  // namespace

std::size_t Raster::count(Rgb color) const {
    return static_cast<std::size_t>(std::count(pixels.begin(), pixels.end(), color));
}

Raster render_bev(const PointCloud& cloud, const std::vector<std::uint8_t>& pred,
                  const std::vector<std::uint8_t>& gt, const RenderConfig& cfg) {
    if (pred.size() != cloud.size() || gt.size() != cloud.size()) {
        throw std::invalid_argument("render_bev: mask length does not match cloud");
    }
    if (!(cfg.meters_per_pixel > 0.0) || !(cfg.extent_m > 0.0)) {
        throw std::invalid_argument("render_bev: scale and extent must be positive");
    }
    const int side = 2 * static_cast<int>(std::ceil(cfg.extent_m / cfg.meters_per_pixel));
    Raster img(side, side, kColorBackground);
    const double scale = 1.0 / cfg.meters_per_pixel;
    const int cx = side / 2;
    const int cy = side / 2;

    // confusion colors win over gray, so draw the misses/hits last
    auto color_rank = [](Rgb c) {
        if (c == kColorBackground) return 0;
        if (c == kColorOther) return 1;
        return 2;
    };
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point& p = cloud.points[i];
        const int x = cx + static_cast<int>(std::lround(p.x * scale));
        const int y = cy - static_cast<int>(std::lround(p.y * scale));
        if (x < 0 || x >= side || y < 0 || y >= side) {
            continue;
        }
        Rgb color = kColorOther;
        if (pred[i] && gt[i]) {
            color = kColorTp;
        } else if (!pred[i] && gt[i]) {
            color = kColorFn;
        } else if (pred[i] && !gt[i]) {
            color = kColorFp;
        }
        if (color_rank(color) >= color_rank(img.at(x, y))) {
            img.at(x, y) = color;
        }
    }

    if (cfg.draw_polygons) {
        std::vector<Point> pred_pts;
        std::vector<Point> gt_pts;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            if (pred[i]) {
                pred_pts.push_back(cloud.points[i]);
            }
            if (gt[i]) {
                gt_pts.push_back(cloud.points[i]);
            }
        }
        draw_polygon(img, bev_polygon(gt_pts), cfg, kColorGtOutline);
        draw_polygon(img, bev_polygon(pred_pts), cfg, kColorPredOutline);
    }
    return img;
}

void write_ppm(const std::filesystem::path& path, const Raster& raster) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << "P6\n" << raster.width << ' ' << raster.height << "\n255\n";
    for (const Rgb& px : raster.pixels) {
        out.put(static_cast<char>(px.r));
        out.put(static_cast<char>(px.g));
        out.put(static_cast<char>(px.b));
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

}  // namespace groundseg
