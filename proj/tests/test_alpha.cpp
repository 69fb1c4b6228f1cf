#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "groundseg/alpha.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace groundseg;
using testsupport::kPi;

TEST_CASE("alpha of two points on a horizontal line is zero") {
    // both points sit at z = 0: (10, 0) and (11, 0)
    CHECK(alpha_cell(10.0, 0.0, 11.0, 0.0) == 0.0);
}

TEST_CASE("alpha of two points stacked vertically is pi/2") {
    // lower (x=3, z=0), upper (x=3, z=1)
    const double r_up = std::sqrt(10.0);
    const double p_up = std::atan2(1.0, 3.0);
    CHECK(alpha_cell(3.0, 0.0, r_up, p_up) == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("alpha of a 45-degree step") {
    // lower (2, 0), upper (3, 1): rise 1 over run 1
    const double r_up = std::sqrt(10.0);
    const double p_up = std::atan2(1.0, 3.0);
    CHECK(alpha_cell(2.0, 0.0, r_up, p_up) == doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("coincident points give zero, not NaN") {
    CHECK(alpha_cell(5.0, 0.1, 5.0, 0.1) == 0.0);
}

TEST_CASE("swapped orientation flips the vertical-line case to zero") {
    const double r_up = std::sqrt(10.0);
    const double p_up = std::atan2(1.0, 3.0);
    CHECK(alpha_cell(3.0, 0.0, r_up, p_up, AlphaOrientation::AsPrinted) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("alpha is symmetric, scale-invariant and bounded") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ur(0.5, 80.0);
    std::uniform_real_distribution<double> up(-0.6, 0.3);
    std::uniform_real_distribution<double> uk(0.1, 10.0);
    for (int i = 0; i < 20000; ++i) {
        const double ra = ur(rng), pa = up(rng), rb = ur(rng), pb = up(rng);
        const double a = alpha_cell(ra, pa, rb, pb);
        CHECK(a >= 0.0);
        CHECK(a <= kPi / 2 + 1e-12);
        CHECK(alpha_cell(rb, pb, ra, pa) == a);
        const double k = uk(rng);
        CHECK(alpha_cell(k * ra, pa, k * rb, pb) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("matrix skips holes and lands on the lower cell") {
    // rows: 0 valid, 1 hole, 2 valid, 3 valid
    const RangeImage img = testsupport::make_column({4.0, 0.0, 3.0, 2.0});
    const AlphaMatrix m = build_alpha(img);
    CHECK(m.valid.at(2, 0) == 1);  // pair (0, 2) across the hole
    CHECK(m.valid.at(3, 0) == 1);  // pair (2, 3)
    CHECK(m.valid.at(1, 0) == 0);  // the hole itself
    // row 0 is the column's top-most return: it duplicates the alpha of
    // the pair below it (the (0, 2) pair), exactly like the dense
    // top-row-copy rule
    CHECK(m.valid.at(0, 0) == 1);
    CHECK(m.alpha.at(0, 0) == m.alpha.at(2, 0));
    CHECK(m.alpha.at(2, 0) ==
          alpha_cell(img.range.at(2, 0), img.pitch.at(2, 0), img.range.at(0, 0),
                     img.pitch.at(0, 0)));
}

TEST_CASE("top row duplicates the second row") {
    const RangeImage img = testsupport::make_column({4.0, 3.5, 3.0, 2.5});
    const AlphaMatrix m = build_alpha(img);
    CHECK(m.valid.at(0, 0) == 1);
    CHECK(m.alpha.at(0, 0) == m.alpha.at(1, 0));
    // row 1 pairs with row 0; the only cell without an upper partner is row 0
    CHECK(m.valid.at(1, 0) == 1);
}

TEST_CASE("single valid cell in a column yields no alpha") {
    const RangeImage img = testsupport::make_column({0.0, 0.0, 7.0, 0.0});
    const AlphaMatrix m = build_alpha(img);
    for (int r = 0; r < 4; ++r) {
        CHECK(m.valid.at(r, 0) == 0);
    }
}

TEST_CASE("flat scene has identically zero alpha everywhere valid") {
    const auto scene = testsupport::make_flat_scene(SensorConfig::preset("hdl64"));
    const AlphaMatrix m = build_alpha(scene.image);
    std::size_t checked = 0;
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) {
            if (m.valid.at(r, c)) {
                CHECK(m.alpha.at(r, c) < 1e-12);
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("wall cells sit near pi/2") {
    const auto scene = testsupport::make_wall_scene(SensorConfig::preset("hdl64"));
    const AlphaMatrix m = build_alpha(scene.image);
    std::size_t wall_pairs = 0;
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) {
            // wall cell whose upper partner is also wall: pure vertical step
            if (scene.wall.at(r, c) && r > 0 && scene.wall.at(r - 1, c) && m.valid.at(r, c)) {
                CHECK(m.alpha.at(r, c) > kPi / 2 - 1e-6);
                ++wall_pairs;
            }
        }
    }
    CHECK(wall_pairs > 0);
}

TEST_CASE("matrix agrees with the pair-list oracle on random images") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const RangeImage img = testsupport::random_image(rng, 10, 8, 0.6);
        const auto orientation =
            (trial % 2) ? AlphaOrientation::AsPrinted : AlphaOrientation::Corrected;
        const AlphaMatrix got = build_alpha(img, orientation);
        const AlphaMatrix want = testoracle::alpha_matrix(img, orientation);
        CHECK(got.valid == want.valid);
        CHECK(got.alpha == want.alpha);
    }
}
