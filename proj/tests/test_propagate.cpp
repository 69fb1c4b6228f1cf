#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "groundseg/ingest.hpp"
#include "groundseg/propagate.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace groundseg;

namespace {

/// Hand-built alpha matrix: entries < 0 mean invalid.
AlphaMatrix alpha_from(const std::vector<std::vector<double>>& rows) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows[0].size());
    AlphaMatrix m(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (v >= 0.0) {
                m.alpha.at(r, c) = v;
                m.valid.at(r, c) = 1;
            }
        }
    }
    return m;
}

std::size_t ground_cells(const LabelMask& m) { return m.ground_count(); }

}  // namespace

TEST_CASE("seed is the bottom-most valid cell of each column") {
    // column 0 qualifies, column 1 is too steep at the bottom even though
    // a higher cell would pass, column 2 has no valid cell
    const AlphaMatrix m = alpha_from({
        {0.10, 0.10, -1.0},
        {0.05, 0.05, -1.0},
        {0.20, 1.00, -1.0},
    });
    const LabelMask seeds = init_seeds(m, SegParams{});
    CHECK(seeds.cells.at(2, 0) == CellLabel::Ground);
    CHECK(seeds.cells.at(2, 1) == CellLabel::NotGround);  // 1.0 rad > 45 deg
    CHECK(seeds.cells.at(1, 1) == CellLabel::NotGround);  // not the bottom-most
    CHECK(seeds.cells.at(2, 2) == CellLabel::Invalid);
    CHECK(ground_cells(seeds) == 1);
}

TEST_CASE("one bottom-up sweep climbs a whole uniform column") {
    const AlphaMatrix m = alpha_from({{0.02}, {0.02}, {0.02}, {0.02}, {0.01}});
    const SegParams p;
    LabelMask labels = init_seeds(m, p);
    REQUIRE(labels.cells.at(4, 0) == CellLabel::Ground);
    const std::size_t filled = flood_step(labels, m, p);
    CHECK(filled == 4);
    for (int r = 0; r < 5; ++r) {
        CHECK(labels.is_ground(r, 0));
    }
    // a second sweep has nothing left to do
    CHECK(flood_step(labels, m, p) == 0);
}

TEST_CASE("synchronous sweeps climb one step per iteration") {
    const AlphaMatrix m = alpha_from({{0.02}, {0.02}, {0.02}});
    SegParams p;
    p.neighbor_mode = NeighborMode::FourWay;
    LabelMask labels = init_seeds(m, p);
    CHECK(flood_step(labels, m, p, SweepVisibility::PreviousIteration) == 1);
    CHECK(labels.is_ground(1, 0));
    CHECK_FALSE(labels.is_ground(0, 0));
    CHECK(flood_step(labels, m, p, SweepVisibility::PreviousIteration) == 1);
    CHECK(labels.is_ground(0, 0));
}

TEST_CASE("two-step reach crosses a cell the one-step rule cannot pass") {
    // seed 0.05, middle 0.10 (passes from seed), top 0.00: top differs
    // from the middle by more than 5 degrees but matches the seed.
    const AlphaMatrix m = alpha_from({{0.00}, {0.10}, {0.05}});
    SegParams cross;
    cross.neighbor_mode = NeighborMode::CrossEightWay;
    SegParams four;
    four.neighbor_mode = NeighborMode::FourWay;

    LabelMask a = init_seeds(m, cross);
    REQUIRE(a.cells.at(2, 0) == CellLabel::Ground);
    while (flood_step(a, m, cross) > 0) {
    }
    CHECK(a.is_ground(1, 0));
    CHECK(a.is_ground(0, 0));

    LabelMask b = init_seeds(m, four);
    while (flood_step(b, m, four) > 0) {
    }
    CHECK(b.is_ground(1, 0));
    CHECK_FALSE(b.is_ground(0, 0));  // |0.00 - 0.10| is too steep stepwise
}

TEST_CASE("two-step reach requires a valid midpoint") {
    const AlphaMatrix m = alpha_from({{0.05}, {-1.0}, {0.05}});
    SegParams p;  // cross_eight_way
    LabelMask labels = init_seeds(m, p);
    REQUIRE(labels.cells.at(2, 0) == CellLabel::Ground);
    while (flood_step(labels, m, p) > 0) {
    }
    CHECK_FALSE(labels.is_ground(0, 0));
}

TEST_CASE("two-step reach also needs the midpoint chained to the source") {
    // midpoint valid but wildly different from the seed: clause fails
    const AlphaMatrix m = alpha_from({{0.05}, {1.20}, {0.05}});
    SegParams p;
    LabelMask labels = init_seeds(m, p);
    while (flood_step(labels, m, p) > 0) {
    }
    CHECK_FALSE(labels.is_ground(0, 0));
    CHECK_FALSE(labels.is_ground(1, 0));
}

TEST_CASE("horizontal two-step reach works symmetrically") {
    // (0,2) disagrees with its left neighbor by more than the threshold
    // but matches the cell two to the left
    const AlphaMatrix m = alpha_from({
        {0.06, 0.145, 0.05},
        {0.01, 1.20, 1.20},
    });
    SegParams cross;
    SegParams four;
    four.neighbor_mode = NeighborMode::FourWay;

    LabelMask a = init_seeds(m, cross);
    REQUIRE(a.cells.at(1, 0) == CellLabel::Ground);
    REQUIRE(a.cells.at(0, 2) == CellLabel::NotGround);
    while (flood_step(a, m, cross) > 0) {
    }
    CHECK(a.is_ground(0, 2));

    LabelMask b = init_seeds(m, four);
    while (flood_step(b, m, four) > 0) {
    }
    CHECK_FALSE(b.is_ground(0, 2));
}

TEST_CASE("diagonals fill under eight-way only") {
    // (0,1) is reachable from the seed only along the diagonal: its own
    // column bottoms out on a steep cell
    AlphaMatrix m = alpha_from({
        {-1.0, 0.02},
        {0.02, 1.20},
    });
    SegParams p;
    for (auto mode : {NeighborMode::FourWay, NeighborMode::CrossEightWay,
                      NeighborMode::EightWay}) {
        p.neighbor_mode = mode;
        LabelMask labels = init_seeds(m, p);
        REQUIRE(labels.cells.at(1, 0) == CellLabel::Ground);
        REQUIRE(labels.cells.at(1, 1) == CellLabel::NotGround);
        while (flood_step(labels, m, p) > 0) {
        }
        CHECK(labels.is_ground(0, 1) == (mode == NeighborMode::EightWay));
    }
}

TEST_CASE("sweeps converge to the reachability closure") {
    std::mt19937_64 rng(101);
    const SweepVisibility visibilities[] = {SweepVisibility::InSweep,
                                            SweepVisibility::PreviousIteration};
    for (int trial = 0; trial < 200; ++trial) {
        SegParams p;
        switch (trial % 3) {
            case 0: p.neighbor_mode = NeighborMode::FourWay; break;
            case 1: p.neighbor_mode = NeighborMode::EightWay; break;
            default: p.neighbor_mode = NeighborMode::CrossEightWay; break;
        }
        const AlphaMatrix m = testsupport::random_alpha(rng, 12, 10, 0.8, 0.35);
        const LabelMask seeds = init_seeds(m, p);
        const LabelMask closure = testoracle::reachable_closure(seeds, m, p);

        for (const auto vis : visibilities) {
            LabelMask labels = seeds;
            std::size_t prev_ground = ground_cells(labels);
            int guard = 0;
            while (true) {
                const std::size_t filled = flood_step(labels, m, p, vis);
                const std::size_t now_ground = ground_cells(labels);
                CHECK(now_ground == prev_ground + filled);  // growth accounting
                prev_ground = now_ground;
                if (filled == 0) {
                    break;
                }
                REQUIRE(++guard < 1000);
            }
            CHECK(labels.cells == closure.cells);
        }
    }
}

TEST_CASE("one synchronous step matches the edge-wise oracle") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        SegParams p;
        p.neighbor_mode =
            (trial % 2) ? NeighborMode::CrossEightWay : NeighborMode::EightWay;
        const AlphaMatrix m = testsupport::random_alpha(rng, 10, 9, 0.75, 0.3);
        LabelMask labels = init_seeds(m, p);
        const LabelMask expected = testoracle::synchronous_step(labels, m, p);
        flood_step(labels, m, p, SweepVisibility::PreviousIteration);
        CHECK(labels.cells == expected.cells);
    }
}

TEST_CASE("in-sweep visibility dominates the synchronous sweep") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        SegParams p;
        const AlphaMatrix m = testsupport::random_alpha(rng, 10, 10, 0.8, 0.3);
        LabelMask in_sweep = init_seeds(m, p);
        LabelMask sync = in_sweep;
        flood_step(in_sweep, m, p, SweepVisibility::InSweep);
        flood_step(sync, m, p, SweepVisibility::PreviousIteration);
        for (int r = 0; r < m.height; ++r) {
            for (int c = 0; c < m.width; ++c) {
                if (sync.is_ground(r, c)) {
                    CHECK(in_sweep.is_ground(r, c));
                }
            }
        }
    }
}

TEST_CASE("labels only ever grow and invalid cells stay invalid") {
    std::mt19937_64 rng(109);
    SegParams p;
    const AlphaMatrix m = testsupport::random_alpha(rng, 14, 12, 0.7, 0.4);
    LabelMask labels = init_seeds(m, p);
    LabelMask before = labels;
    for (int it = 0; it < 6; ++it) {
        flood_step(labels, m, p);
        for (int r = 0; r < m.height; ++r) {
            for (int c = 0; c < m.width; ++c) {
                if (!m.valid.at(r, c)) {
                    CHECK(labels.cells.at(r, c) == CellLabel::Invalid);
                }
                if (before.is_ground(r, c)) {
                    CHECK(labels.is_ground(r, c));
                }
            }
        }
        before = labels;
    }
}

TEST_CASE("alternate sweep directions still reach the same closure") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        SegParams p;
        p.flood_iterations = 40;
        const AlphaMatrix m = testsupport::random_alpha(rng, 10, 10, 0.8, 0.3);
        const LabelMask seeds = init_seeds(m, p);
        const LabelMask closure = testoracle::reachable_closure(seeds, m, p);

        LabelMask labels = seeds;
        for (int it = 0; it < p.flood_iterations; ++it) {
            const auto dir = (it % 2) ? SweepDirection::TopDownRightLeft
                                      : SweepDirection::BottomUpLeftRight;
            if (flood_step(labels, m, p, SweepVisibility::InSweep, dir) == 0) {
                break;
            }
        }
        CHECK(labels.cells == closure.cells);
    }
}

TEST_CASE("segment equals the hand-assembled stage chain") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        const RangeImage img = testsupport::random_image(rng, 12, 16, 0.65);
        SegParams p;
        p.flood_iterations = 5;
        const LabelMask got = segment(img, p);

        RangeImage repaired = repair_range(img, p);
        repaired = repair_pitch(repaired);
        const AlphaMatrix alpha = build_alpha(repaired, p.alpha_orientation);
        LabelMask want = init_seeds(alpha, p);
        for (int it = 0; it < p.flood_iterations; ++it) {
            if (flood_step(want, alpha, p) == 0) {
                break;
            }
        }
        CHECK(got.cells == want.cells);
    }
}

TEST_CASE("flat scene reaches full recall in a single sweep") {
    const auto scene = testsupport::make_flat_scene(SensorConfig::preset("hdl64"));
    SegParams p;
    p.flood_iterations = 1;
    const LabelMask labels = segment(scene.image, p);
    for (int r = 0; r < labels.height; ++r) {
        for (int c = 0; c < labels.width; ++c) {
            if (scene.ground.at(r, c)) {
                CHECK(labels.is_ground(r, c));
            }
        }
    }
}

TEST_CASE("wall cells never become ground") {
    const auto scene = testsupport::make_wall_scene(SensorConfig::preset("hdl64"));
    const LabelMask labels = segment(scene.image, SegParams{});
    std::size_t wall_cells = 0;
    for (int r = 0; r < labels.height; ++r) {
        for (int c = 0; c < labels.width; ++c) {
            if (scene.wall.at(r, c)) {
                ++wall_cells;
                CHECK_FALSE(labels.is_ground(r, c));
            }
        }
    }
    CHECK(wall_cells > 0);
}

TEST_CASE("back-projection labels owners and shadowed alike, dropped never") {
    PointCloud cloud;
    cloud.points.push_back({10.0, 0.0, 0.0, 0.0});  // owner of its cell
    cloud.points.push_back({12.0, 0.0, 0.0, 0.0});  // shadowed, same cell
    cloud.points.push_back({0.0, 0.0, 0.0, 0.0});   // dropped
    const auto proj = project(cloud, SensorConfig::preset("hdl64"));
    LabelMask labels(proj.image.height, proj.image.width);
    labels.cells.at(6, 1024) = CellLabel::Ground;
    const auto mask = back_project(labels, proj);
    CHECK(mask == std::vector<std::uint8_t>{1, 1, 0});
}
