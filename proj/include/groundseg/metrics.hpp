#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "groundseg/types.hpp"

namespace groundseg {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;
};

/// Element-wise tally; throws std::invalid_argument on length mismatch.
ConfusionCounts confusion(const std::vector<std::uint8_t>& pred,
                          const std::vector<std::uint8_t>& gt);

/// Harmonic mean of precision and recall. 0 when tp = 0 with any fp/fn,
/// 1 when tp = fp = fn = 0.
double f1(const ConfusionCounts& c);

/// tp / (tp + fp + fn); 1 when the denominator is 0.
double iou(const ConfusionCounts& c);

/// 360-sector radial edge profile of a BEV point set: per 1-degree sector
/// the maximum distance from the origin, 0 where no point fell.
struct BevRadialPolygon {
    static constexpr int kSectors = 360;
    std::array<double, kSectors> radii{};
    std::array<bool, kSectors> occupied{};

    bool empty() const;
};

BevRadialPolygon bev_polygon(const std::vector<Point>& points);

/// Shoelace area of the closed loop through the sector-center vertices.
double polygon_area(const BevRadialPolygon& poly);

/// Sector-wise min of two radial polygons (sectors occupied in both).
BevRadialPolygon polygon_intersection(const BevRadialPolygon& a, const BevRadialPolygon& b);

/// Sector-wise max (sectors occupied in either).
BevRadialPolygon polygon_union(const BevRadialPolygon& a, const BevRadialPolygon& b);

/// Area ratio of the radial intersection and union polygons. 1 when both
/// point sets are empty, 0 when exactly one is.
double iou_bev(const std::vector<Point>& pred_pts, const std::vector<Point>& gt_pts);

struct FrameScore {
    double f1_ri = 0.0;
    double iou_ri = 0.0;
    double iou_bev = 0.0;
};

/// Point-level F1/IoU plus BEV IoU of the predicted-ground vs
/// true-ground point sets.
FrameScore score_frame(const std::vector<std::uint8_t>& pred_mask,
                       const std::vector<std::uint8_t>& gt_mask, const PointCloud& cloud);

struct DistributionRow {
    std::string metric;
    double bin_lo = 0.0;
    double bin_hi = 0.0;
    double pdf = 0.0;  // fraction of frames in the bin
    double cdf = 0.0;  // fraction of frames at or below bin_hi
};

/// Histogram plus empirical CDF over [0,1] for each of the three metrics.
/// Throws std::invalid_argument on empty input.
std::vector<DistributionRow> distribution_report(const std::vector<FrameScore>& scores,
                                                 int bins = 50);

/// CSV emitters. Schemas:
///   frame_id,f1_ri,iou_ri,iou_bev
///   metric,bin_lo,bin_hi,pdf,cdf
void write_score_csv(std::ostream& os, const std::vector<std::string>& frame_ids,
                     const std::vector<FrameScore>& scores);
void write_distribution_csv(std::ostream& os, const std::vector<DistributionRow>& rows);

}  // namespace groundseg
