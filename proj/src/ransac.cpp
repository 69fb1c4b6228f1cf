#include "groundseg/ransac.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace groundseg {

namespace {

std::size_t count_inliers(const PointCloud& cloud, const PlaneModel& plane, double dist_thresh,
                          std::vector<std::uint8_t>* mask) {
    std::size_t n = 0;
    if (mask != nullptr) {
        mask->assign(cloud.size(), 0);
    }
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (plane.distance(cloud.points[i]) <= dist_thresh) {
            ++n;
            if (mask != nullptr) {
                (*mask)[i] = 1;
            }
        }
    }
    return n;
}

/// Flip so the normal points up (+z); ties broken toward +x then +y so
/// orientation is canonical for horizontal planes too.
void canonicalize(PlaneModel& plane) {
    double sign = plane.nz;
    if (sign == 0.0) {
        sign = plane.nx != 0.0 ? plane.nx : plane.ny;
    }
    if (sign < 0.0) {
        plane.nx = -plane.nx;
        plane.ny = -plane.ny;
        plane.nz = -plane.nz;
        plane.d = -plane.d;
    }
}

}  // namespace

double PlaneModel::distance(const Point& p) const {
    return std::abs(nx * p.x + ny * p.y + nz * p.z + d);
}

RansacResult ransac_ground(const PointCloud& cloud, double dist_thresh, int max_iters,
                           std::uint64_t seed) {
    if (cloud.size() < 3) {
        throw std::invalid_argument("ransac_ground: need at least 3 points");
    }
    if (dist_thresh <= 0.0 || max_iters < 1) {
        throw std::invalid_argument("ransac_ground: bad threshold or iteration count");
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);

    PlaneModel best;
    std::size_t best_count = 0;
    bool found = false;

    for (int it = 0; it < max_iters; ++it) {
        const std::size_t ia = pick(rng);
        const std::size_t ib = pick(rng);
        const std::size_t ic = pick(rng);
        if (ia == ib || ia == ic || ib == ic) {
            continue;
        }
        const Point& a = cloud.points[ia];
        const Point& b = cloud.points[ib];
        const Point& c = cloud.points[ic];
        const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
        const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
        const double nx = uy * vz - uz * vy;
        const double ny = uz * vx - ux * vz;
        const double nz = ux * vy - uy * vx;
        const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
        if (norm < 1e-12) {
            continue;  // collinear sample
        }
        PlaneModel candidate{nx / norm, ny / norm, nz / norm, 0.0};
        candidate.d = -(candidate.nx * a.x + candidate.ny * a.y + candidate.nz * a.z);
        const std::size_t count = count_inliers(cloud, candidate, dist_thresh, nullptr);
        if (count > best_count) {
            best_count = count;
            best = candidate;
            found = true;
        }
    }
    if (!found) {
        throw std::invalid_argument("ransac_ground: no non-degenerate sample found");
    }

    RansacResult result;
    result.plane = best;
    result.inlier_count = count_inliers(cloud, best, dist_thresh, &result.inliers);

    // Least-squares refit: smallest-eigenvalue direction of the inlier
    // covariance. Kept only when it does not lose inliers.
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (result.inliers[i]) {
            centroid += Eigen::Vector3d(cloud.points[i].x, cloud.points[i].y, cloud.points[i].z);
        }
    }
    centroid /= static_cast<double>(result.inlier_count);
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (result.inliers[i]) {
            const Eigen::Vector3d q =
                Eigen::Vector3d(cloud.points[i].x, cloud.points[i].y, cloud.points[i].z) -
                centroid;
            cov += q * q.transpose();
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    if (solver.info() == Eigen::Success) {
        const Eigen::Vector3d n = solver.eigenvectors().col(0);  // ascending eigenvalues
        PlaneModel refit{n.x(), n.y(), n.z(), -n.dot(centroid)};
        std::vector<std::uint8_t> refit_mask;
        const std::size_t refit_count = count_inliers(cloud, refit, dist_thresh, &refit_mask);
        if (refit_count >= result.inlier_count) {
            result.plane = refit;
            result.inliers = std::move(refit_mask);
            result.inlier_count = refit_count;
        }
    }
    canonicalize(result.plane);
    return result;
}

}  // namespace groundseg
