#pragma once

#include <cstdint>
#include <vector>

#include "groundseg/types.hpp"

namespace groundseg {

/// Plane n . p + d = 0 with unit normal.
struct PlaneModel {
    double nx = 0.0;
    double ny = 0.0;
    double nz = 1.0;
    double d = 0.0;

    double distance(const Point& p) const;
};

struct RansacResult {
    PlaneModel plane;
    std::vector<std::uint8_t> inliers;  // per-point prediction
    std::size_t inlier_count = 0;
};

/// Plain RANSAC plane fit: sample 3 points, keep the plane with the most
/// points within dist_thresh, then least-squares refit on its inliers.
/// If the refit loses inliers the sampled plane is kept. Deterministic
/// under a fixed seed. Throws std::invalid_argument for fewer than 3
/// points or an all-collinear cloud.
RansacResult ransac_ground(const PointCloud& cloud, double dist_thresh, int max_iters,
                           std::uint64_t seed);

}  // namespace groundseg
