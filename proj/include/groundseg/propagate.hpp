#pragma once

#include <cstddef>
#include <cstdint>

#include "groundseg/alpha.hpp"
#include "groundseg/numeric_ops.hpp"
#include "groundseg/params.hpp"
#include "groundseg/preprocess.hpp"
#include "groundseg/types.hpp"

namespace groundseg {

enum class CellLabel : std::uint8_t {
    Invalid = 0,
    NotGround = 1,
    Ground = 2,
};

struct LabelMask {
    int height = 0;
    int width = 0;
    Grid<CellLabel> cells;

    LabelMask() = default;
    LabelMask(int h, int w) : height(h), width(w), cells(h, w, CellLabel::Invalid) {}

    bool is_ground(int row, int col) const { return cells.at(row, col) == CellLabel::Ground; }

    std::size_t ground_count() const {
        std::size_t n = 0;
        for (const CellLabel c : cells.data()) {
            n += (c == CellLabel::Ground) ? 1 : 0;
        }
        return n;
    }
};

enum class SweepVisibility {
    InSweep,            // labels written during the sweep are seen by later cells
    PreviousIteration,  // synchronous update; order-independent variant
};

enum class SweepDirection {
    BottomUpLeftRight,
    TopDownRightLeft,
};

/// Seed initialization: per column the bottom-most alpha-valid cell
/// becomes GROUND when its alpha passes seed_thresh; every other valid
/// cell starts NOT_GROUND.
template <class Ops>
LabelMask init_seeds_with(const AlphaMatrix& alpha, const SegParams& p) {
    LabelMask out(alpha.height, alpha.width);
    for (int col = 0; col < alpha.width; ++col) {
        int seed_row = -1;
        for (int row = alpha.height - 1; row >= 0; --row) {
            if (alpha.valid.at(row, col)) {
                if (seed_row < 0) {
                    seed_row = row;
                }
                out.cells.at(row, col) = CellLabel::NotGround;
            }
        }
        if (seed_row >= 0 && Ops::le(alpha.alpha.at(seed_row, col), p.seed_thresh_rad)) {
            out.cells.at(seed_row, col) = CellLabel::Ground;
        }
    }
    return out;
}

LabelMask init_seeds(const AlphaMatrix& alpha, const SegParams& p);

namespace detail {

/// Connectivity test for one cell against the current ground set.
/// `ground` must answer "is this cell ground right now" under the chosen
/// visibility; alpha validity gates which neighbors exist at all.
template <class Ops, class GroundFn>
bool cell_fills(int row, int col, const AlphaMatrix& alpha, const SegParams& p,
                GroundFn&& ground) {
    static constexpr int kOrtho[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    static constexpr int kDiag[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};

    const double a_c = alpha.alpha.at(row, col);
    for (const auto& d : kOrtho) {
        const int r1 = row + d[0];
        const int c1 = col + d[1];
        const bool s1_ok = alpha.valid.in_bounds(r1, c1) && alpha.valid.at(r1, c1);
        if (s1_ok && ground(r1, c1) &&
            Ops::close_le(a_c, alpha.alpha.at(r1, c1), p.alpha_thresh_rad)) {
            return true;
        }
        if (p.neighbor_mode == NeighborMode::CrossEightWay && s1_ok) {
            const int r2 = row + 2 * d[0];
            const int c2 = col + 2 * d[1];
            if (alpha.valid.in_bounds(r2, c2) && alpha.valid.at(r2, c2) && ground(r2, c2) &&
                Ops::close_le(alpha.alpha.at(r2, c2), alpha.alpha.at(r1, c1),
                              p.alpha_thresh_rad) &&
                Ops::close_le(a_c, alpha.alpha.at(r2, c2), p.alpha_thresh_rad)) {
                return true;
            }
        }
    }
    if (p.neighbor_mode == NeighborMode::EightWay) {
        for (const auto& d : kDiag) {
            const int r1 = row + d[0];
            const int c1 = col + d[1];
            if (alpha.valid.in_bounds(r1, c1) && alpha.valid.at(r1, c1) && ground(r1, c1) &&
                Ops::close_le(a_c, alpha.alpha.at(r1, c1), p.alpha_thresh_rad)) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// One full flood-fill sweep. Returns the number of newly filled cells.
template <class Ops>
std::size_t flood_step_with(LabelMask& labels, const AlphaMatrix& alpha, const SegParams& p,
                            SweepVisibility vis = SweepVisibility::InSweep,
                            SweepDirection dir = SweepDirection::BottomUpLeftRight) {
    const int h = labels.height;
    const int w = labels.width;
    LabelMask before;
    if (vis == SweepVisibility::PreviousIteration) {
        before = labels;
    }
    const LabelMask& view = (vis == SweepVisibility::PreviousIteration) ? before : labels;
    auto ground = [&view](int r, int c) { return view.is_ground(r, c); };

    std::size_t filled = 0;
    auto visit = [&](int row, int col) {
        if (labels.cells.at(row, col) != CellLabel::NotGround) {
            return;
        }
        if (detail::cell_fills<Ops>(row, col, alpha, p, ground)) {
            labels.cells.at(row, col) = CellLabel::Ground;
            ++filled;
        }
    };

    if (dir == SweepDirection::BottomUpLeftRight) {
        for (int row = h - 1; row >= 0; --row) {
            for (int col = 0; col < w; ++col) {
                visit(row, col);
            }
        }
    } else {
        for (int row = 0; row < h; ++row) {
            for (int col = w - 1; col >= 0; --col) {
                visit(row, col);
            }
        }
    }
    return filled;
}

std::size_t flood_step(LabelMask& labels, const AlphaMatrix& alpha, const SegParams& p,
                       SweepVisibility vis = SweepVisibility::InSweep,
                       SweepDirection dir = SweepDirection::BottomUpLeftRight);

/// Full functional pipeline: range repair, pitch repair, alpha, seeds,
/// then flood sweeps until the iteration budget or a fixed point.
template <class Ops>
LabelMask segment_with(const RangeImage& img, const SegParams& p) {
    p.validate();
    RangeImage repaired = repair_range_with<Ops>(img, p);
    repaired = repair_pitch(repaired);
    const AlphaMatrix alpha = build_alpha_with<Ops>(repaired, p.alpha_orientation);
    LabelMask labels = init_seeds_with<Ops>(alpha, p);
    for (int it = 0; it < p.flood_iterations; ++it) {
        const SweepDirection dir = (p.alternate_sweep && it % 2 == 1)
                                       ? SweepDirection::TopDownRightLeft
                                       : SweepDirection::BottomUpLeftRight;
        if (flood_step_with<Ops>(labels, alpha, p, SweepVisibility::InSweep, dir) == 0) {
            break;
        }
    }
    return labels;
}

LabelMask segment(const RangeImage& img, const SegParams& p);

/// Per-point ground prediction from a cell mask: owner and shadowed
/// points inherit their cell's label, dropped points are never ground.
std::vector<std::uint8_t> back_project(const LabelMask& labels, const ProjectionResult& proj);

}  // namespace groundseg
