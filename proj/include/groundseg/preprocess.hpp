#pragma once

#include <cstddef>
#include <vector>

#include "groundseg/numeric_ops.hpp"
#include "groundseg/params.hpp"
#include "groundseg/types.hpp"

namespace groundseg {

struct RepairStats {
    std::size_t range_cells_repaired = 0;
    std::size_t pitch_cells_repaired = 0;
    std::size_t rows_without_pitch = 0;  // rows no nearest-neighbor fill could reach
};

/// Column-wise average repair of invalid range cells. For each invalid
/// cell, (up, down) pairs are drawn from the half-window above and below;
/// a pair counts when both members are valid and their ranges differ by
/// less than repair_range_thresh_m. With at least one such pair the cell
/// takes the mean over all members of all counting pairs and becomes
/// valid. Valid cells are never touched.
template <class Ops>
RangeImage repair_range_with(const RangeImage& img, const SegParams& p,
                             RepairStats* stats = nullptr) {
    p.validate();
    RangeImage out = img;
    const int half = p.repair_half_window;
    std::vector<double> members;

    for (int col = 0; col < img.width; ++col) {
        for (int row = 0; row < img.height; ++row) {
            if (img.valid.at(row, col)) {
                continue;
            }
            members.clear();
            if (p.repair_pairing == RepairPairing::CrossProduct) {
                for (int u = 1; u <= half; ++u) {
                    const int up = row - u;
                    if (up < 0 || !img.valid.at(up, col)) {
                        continue;
                    }
                    for (int d = 1; d <= half; ++d) {
                        const int down = row + d;
                        if (down >= img.height || !img.valid.at(down, col)) {
                            continue;
                        }
                        const double ru = img.range.at(up, col);
                        const double rd = img.range.at(down, col);
                        if (Ops::diff_lt(ru, rd, p.repair_range_thresh_m)) {
                            members.push_back(ru);
                            members.push_back(rd);
                        }
                    }
                }
            } else {  // equidistant pairs only
                for (int s = 1; s <= half; ++s) {
                    const int up = row - s;
                    const int down = row + s;
                    if (up < 0 || down >= img.height) {
                        continue;
                    }
                    if (!img.valid.at(up, col) || !img.valid.at(down, col)) {
                        continue;
                    }
                    const double ru = img.range.at(up, col);
                    const double rd = img.range.at(down, col);
                    if (Ops::diff_lt(ru, rd, p.repair_range_thresh_m)) {
                        members.push_back(ru);
                        members.push_back(rd);
                    }
                }
            }
            if (!members.empty()) {
                out.range.at(row, col) = Ops::average(members);
                out.valid.at(row, col) = 1;
                if (stats != nullptr) {
                    ++stats->range_cells_repaired;
                }
            }
        }
    }
    return out;
}

RangeImage repair_range(const RangeImage& img, const SegParams& p, RepairStats* stats = nullptr);

/// Row-wise nearest-neighbor pitch fill, scanning left to right. Invalid
/// pitches take the last valid value seen in the row; leading gaps take
/// the row's first valid pitch. Range validity is untouched. Rows with no
/// valid pitch at all are left as-is and counted in stats.
RangeImage repair_pitch(const RangeImage& img, RepairStats* stats = nullptr);

}  // namespace groundseg
