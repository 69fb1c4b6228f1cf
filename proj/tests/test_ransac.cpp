#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "groundseg/ransac.hpp"
#include "support/synthetic.hpp"

using namespace groundseg;

namespace {

PointCloud plane_with_outliers(std::mt19937_64& rng, double z0, int n_plane, int n_outliers,
                               double noise = 0.0) {
    PointCloud cloud;
    std::uniform_real_distribution<double> uxy(-20.0, 20.0);
    std::uniform_real_distribution<double> uz(2.0, 15.0);
    std::normal_distribution<double> un(0.0, noise);
    for (int i = 0; i < n_plane; ++i) {
        cloud.points.push_back({uxy(rng), uxy(rng), z0 + (noise > 0.0 ? un(rng) : 0.0), 0.0});
    }
    for (int i = 0; i < n_outliers; ++i) {
        cloud.points.push_back({uxy(rng), uxy(rng), z0 + uz(rng), 0.0});
    }
    return cloud;
}

}  // namespace

TEST_CASE("recovers an exact horizontal plane through clutter") {
    std::mt19937_64 rng(19);
    const PointCloud cloud = plane_with_outliers(rng, -1.7, 400, 80);
    const RansacResult res = ransac_ground(cloud, 0.2, 200, 42);
    CHECK(res.plane.nz == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.plane.d == doctest::Approx(1.7).epsilon(1e-6));
    CHECK(res.inlier_count == 400);
    for (int i = 0; i < 400; ++i) {
        CHECK(res.inliers[static_cast<std::size_t>(i)] == 1);
    }
}

TEST_CASE("tolerates gaussian noise on the plane") {
    std::mt19937_64 rng(29);
    const PointCloud cloud = plane_with_outliers(rng, -1.5, 500, 100, 0.04);
    const RansacResult res = ransac_ground(cloud, 0.2, 200, 7);
    CHECK(std::abs(res.plane.nz) > std::cos(1.0 * testsupport::kPi / 180.0));
    std::size_t plane_found = 0;
    for (int i = 0; i < 500; ++i) {
        plane_found += res.inliers[static_cast<std::size_t>(i)];
    }
    CHECK(plane_found >= 475);
}

TEST_CASE("normal is canonicalized upward") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const PointCloud cloud = plane_with_outliers(rng, -2.0, 200, 50, 0.02);
        const RansacResult res = ransac_ground(cloud, 0.2, 100, rng());
        CHECK(res.plane.nz >= 0.0);
        const double norm = std::sqrt(res.plane.nx * res.plane.nx +
                                      res.plane.ny * res.plane.ny +
                                      res.plane.nz * res.plane.nz);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("the reported count matches the reported mask and threshold") {
    std::mt19937_64 rng(37);
    const PointCloud cloud = plane_with_outliers(rng, -1.2, 300, 120, 0.05);
    const double thresh = 0.2;
    const RansacResult res = ransac_ground(cloud, thresh, 150, 3);
    std::size_t recount = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const bool in = res.plane.distance(cloud.points[i]) <= thresh;
        CHECK(static_cast<bool>(res.inliers[i]) == in);
        recount += in;
    }
    CHECK(recount == res.inlier_count);
}

TEST_CASE("same seed reproduces the same fit") {
    std::mt19937_64 rng(41);
    const PointCloud cloud = plane_with_outliers(rng, -1.0, 250, 60, 0.03);
    const RansacResult a = ransac_ground(cloud, 0.2, 200, 99);
    const RansacResult b = ransac_ground(cloud, 0.2, 200, 99);
    CHECK(a.plane.nx == b.plane.nx);
    CHECK(a.plane.ny == b.plane.ny);
    CHECK(a.plane.nz == b.plane.nz);
    CHECK(a.plane.d == b.plane.d);
    CHECK(a.inliers == b.inliers);
}

TEST_CASE("translation moves the plane along") {
    std::mt19937_64 rng(43);
    PointCloud cloud = plane_with_outliers(rng, -1.5, 300, 40);
    const RansacResult base = ransac_ground(cloud, 0.2, 200, 11);
    PointCloud lifted = cloud;
    for (Point& p : lifted.points) {
        p.z += 2.5;
    }
    const RansacResult moved = ransac_ground(lifted, 0.2, 200, 11);
    CHECK(moved.plane.nx == doctest::Approx(base.plane.nx).epsilon(1e-9));
    CHECK(moved.plane.nz == doctest::Approx(base.plane.nz).epsilon(1e-9));
    CHECK(moved.plane.d == doctest::Approx(base.plane.d - 2.5 * base.plane.nz).epsilon(1e-6));
    CHECK(moved.inliers == base.inliers);
}

TEST_CASE("degenerate inputs are rejected") {
    PointCloud two;
    two.points = {{0, 0, 0, 0}, {1, 0, 0, 0}};
    CHECK_THROWS_AS((void)ransac_ground(two, 0.2, 100, 1), std::invalid_argument);

    PointCloud line;
    for (int i = 0; i < 50; ++i) {
        line.points.push_back({static_cast<double>(i), 2.0 * i, -3.0 * i, 0.0});
    }
    CHECK_THROWS_AS((void)ransac_ground(line, 0.2, 100, 1), std::invalid_argument);

    PointCloud ok;
    ok.points = {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}};
    CHECK_THROWS_AS((void)ransac_ground(ok, -0.1, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)ransac_ground(ok, 0.2, 0, 1), std::invalid_argument);
}

TEST_CASE("finds the ground of the synthetic flat scene") {
    const auto flat = testsupport::make_flat_cloud(SensorConfig::preset("hdl64"));
    const RansacResult res = ransac_ground(flat.cloud, 0.2, 200, 4);
    CHECK(res.plane.nz == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.inlier_count == flat.cloud.size());
}
