#include "groundseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace groundseg {

ConfusionCounts confusion(const std::vector<std::uint8_t>& pred,
                          const std::vector<std::uint8_t>& gt) {
    if (pred.size() != gt.size()) {
        throw std::invalid_argument("confusion: prediction/truth length mismatch");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred[i] != 0;
        const bool g = gt[i] != 0;
        if (p && g) {
            ++c.tp;
        } else if (p && !g) {
            ++c.fp;
        } else if (!p && g) {
            ++c.fn;
        } else {
            ++c.tn;
        }
    }
    return c;
}

double f1(const ConfusionCounts& c) {
    if (c.tp == 0) {
        return (c.fp == 0 && c.fn == 0) ? 1.0 : 0.0;
    }
    const double tp2 = 2.0 * static_cast<double>(c.tp);
    return tp2 / (tp2 + static_cast<double>(c.fp) + static_cast<double>(c.fn));
}

double iou(const ConfusionCounts& c) {
    const std::uint64_t denom = c.tp + c.fp + c.fn;
    if (denom == 0) {
        return 1.0;
    }
    return static_cast<double>(c.tp) / static_cast<double>(denom);
}

bool BevRadialPolygon::empty() const {
    return std::none_of(occupied.begin(), occupied.end(), [](bool b) { return b; });
}

BevRadialPolygon bev_polygon(const std::vector<Point>& points) {
    BevRadialPolygon poly;
    constexpr double kRad2Deg = 180.0 / std::numbers::pi;
    for (const Point& p : points) {
        const double rho = std::hypot(p.x, p.y);
        double deg = std::atan2(p.y, p.x) * kRad2Deg;
        if (deg < 0.0) {
            deg += 360.0;
        }
        int sector = static_cast<int>(deg);  // 1-degree bins
        if (sector >= BevRadialPolygon::kSectors) {
            sector = 0;  // guards atan2 returning exactly +pi
        }
        poly.occupied[sector] = true;
        poly.radii[sector] = std::max(poly.radii[sector], rho);
    }
    return poly;
}

double polygon_area(const BevRadialPolygon& poly) {
    // Shoelace over sector-center vertices; empty sectors sit at the origin.
    constexpr double kStep = 2.0 * std::numbers::pi / BevRadialPolygon::kSectors;
    double twice_area = 0.0;
    for (int i = 0; i < BevRadialPolygon::kSectors; ++i) {
        const int j = (i + 1) % BevRadialPolygon::kSectors;
        const double ai = (i + 0.5) * kStep;
        const double aj = (j + 0.5) * kStep;
        const double xi = poly.radii[i] * std::cos(ai);
        const double yi = poly.radii[i] * std::sin(ai);
        const double xj = poly.radii[j] * std::cos(aj);
        const double yj = poly.radii[j] * std::sin(aj);
        twice_area += xi * yj - xj * yi;
    }
    return std::abs(twice_area) / 2.0;
}

BevRadialPolygon polygon_intersection(const BevRadialPolygon& a, const BevRadialPolygon& b) {
    BevRadialPolygon out;
    for (int i = 0; i < BevRadialPolygon::kSectors; ++i) {
        if (a.occupied[i] && b.occupied[i]) {
            out.occupied[i] = true;
            out.radii[i] = std::min(a.radii[i], b.radii[i]);
        }
    }
    return out;
}

BevRadialPolygon polygon_union(const BevRadialPolygon& a, const BevRadialPolygon& b) {
    BevRadialPolygon out;
    for (int i = 0; i < BevRadialPolygon::kSectors; ++i) {
        if (a.occupied[i] || b.occupied[i]) {
            out.occupied[i] = true;
            out.radii[i] = std::max(a.radii[i], b.radii[i]);
        }
    }
    return out;
}

double iou_bev(const std::vector<Point>& pred_pts, const std::vector<Point>& gt_pts) {
    const BevRadialPolygon pred = bev_polygon(pred_pts);
    const BevRadialPolygon gt = bev_polygon(gt_pts);
    if (pred.empty() && gt.empty()) {
        return 1.0;
    }
    if (pred.empty() || gt.empty()) {
        return 0.0;
    }
    const double u = polygon_area(polygon_union(pred, gt));
    if (u == 0.0) {
        return 1.0;  // both degenerate to the same zero-area profile
    }
    return polygon_area(polygon_intersection(pred, gt)) / u;
}

FrameScore score_frame(const std::vector<std::uint8_t>& pred_mask,
                       const std::vector<std::uint8_t>& gt_mask, const PointCloud& cloud) {
    if (pred_mask.size() != cloud.size() || gt_mask.size() != cloud.size()) {
        throw std::invalid_argument("score_frame: mask length does not match cloud");
    }
    const ConfusionCounts c = confusion(pred_mask, gt_mask);
    std::vector<Point> pred_pts;
    std::vector<Point> gt_pts;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (pred_mask[i]) {
            pred_pts.push_back(cloud.points[i]);
        }
        if (gt_mask[i]) {
            gt_pts.push_back(cloud.points[i]);
        }
    }
    return FrameScore{f1(c), iou(c), iou_bev(pred_pts, gt_pts)};
}

std::vector<DistributionRow> distribution_report(const std::vector<FrameScore>& scores,
                                                 int bins) {
    if (scores.empty()) {
        throw std::invalid_argument("distribution_report: no scores");
    }
    if (bins < 1) {
        throw std::invalid_argument("distribution_report: bins must be >= 1");
    }
    const double n = static_cast<double>(scores.size());
    std::vector<DistributionRow> rows;
    rows.reserve(static_cast<std::size_t>(bins) * 3);

    const std::pair<std::string, double FrameScore::*> metrics[] = {
        {"f1_ri", &FrameScore::f1_ri},
        {"iou_ri", &FrameScore::iou_ri},
        {"iou_bev", &FrameScore::iou_bev},
    };
    for (const auto& [name, member] : metrics) {
        std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
        for (const FrameScore& s : scores) {
            const double v = std::clamp(s.*member, 0.0, 1.0);
            int b = static_cast<int>(v * bins);
            b = std::min(b, bins - 1);  // v == 1.0 belongs to the last bin
            ++counts[static_cast<std::size_t>(b)];
        }
        double cdf = 0.0;
        for (int b = 0; b < bins; ++b) {
            const double pdf = static_cast<double>(counts[static_cast<std::size_t>(b)]) / n;
            cdf += pdf;
            rows.push_back(DistributionRow{name, static_cast<double>(b) / bins,
                                           static_cast<double>(b + 1) / bins, pdf, cdf});
        }
    }
    return rows;
}

void write_score_csv(std::ostream& os, const std::vector<std::string>& frame_ids,
                     const std::vector<FrameScore>& scores) {
    if (frame_ids.size() != scores.size()) {
        throw std::invalid_argument("write_score_csv: id/score length mismatch");
    }
    os << "frame_id,f1_ri,iou_ri,iou_bev\n";
    os << std::fixed << std::setprecision(6);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        os << frame_ids[i] << ',' << scores[i].f1_ri << ',' << scores[i].iou_ri << ','
           << scores[i].iou_bev << '\n';
    }
}

void write_distribution_csv(std::ostream& os, const std::vector<DistributionRow>& rows) {
    os << "metric,bin_lo,bin_hi,pdf,cdf\n";
    os << std::fixed << std::setprecision(6);
    for (const DistributionRow& r : rows) {
        os << r.metric << ',' << r.bin_lo << ',' << r.bin_hi << ',' << r.pdf << ',' << r.cdf
           << '\n';
    }
}

}  // namespace groundseg
