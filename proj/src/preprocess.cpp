#include "groundseg/preprocess.hpp"

namespace groundseg {

RangeImage repair_range(const RangeImage& img, const SegParams& p, RepairStats* stats) {
    return repair_range_with<FloatOps>(img, p, stats);
}

RangeImage repair_pitch(const RangeImage& img, RepairStats* stats) {
    RangeImage out = img;
    for (int row = 0; row < img.height; ++row) {
        int first_valid = -1;
        for (int col = 0; col < img.width; ++col) {
            if (img.pitch_valid.at(row, col)) {
                first_valid = col;
                break;
            }
        }
        if (first_valid < 0) {
            if (stats != nullptr) {
                ++stats->rows_without_pitch;
            }
            continue;
        }
        double last = img.pitch.at(row, first_valid);  // backfills the leading gap
        for (int col = 0; col < img.width; ++col) {
            if (img.pitch_valid.at(row, col)) {
                last = img.pitch.at(row, col);
            } else {
                out.pitch.at(row, col) = last;
                out.pitch_valid.at(row, col) = 1;
                if (stats != nullptr) {
                    ++stats->pitch_cells_repaired;
                }
            }
        }
    }
    return out;
}

}  // namespace groundseg
