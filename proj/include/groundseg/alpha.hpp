#pragma once

#include <cstdint>

#include "groundseg/numeric_ops.hpp"
#include "groundseg/params.hpp"
#include "groundseg/types.hpp"

namespace groundseg {

/// Inter-channel pitch-angle-difference matrix. alpha is in [0, pi/2];
/// a cell is valid when it and its upper partner are range-valid.
struct AlphaMatrix {
    int height = 0;
    int width = 0;
    Grid<double> alpha;
    Grid<std::uint8_t> valid;

    AlphaMatrix() = default;
    AlphaMatrix(int h, int w) : height(h), width(w), alpha(h, w, 0.0), valid(h, w, 0) {}
};

/// Pitch-angle difference between two polar points (ranges > 0):
/// atan2 of the absolute vertical and horizontal components of the
/// difference vector. Zero/zero is defined as 0.
double alpha_cell(double r_a, double p_a, double r_b, double p_b,
                  AlphaOrientation orientation = AlphaOrientation::Corrected);

/// Builds the alpha matrix column by column over consecutive range-valid
/// cells (residual invalid cells are skipped so isolated holes do not cut
/// the chain). Each alpha lands on the lower point of its pair; the
/// top-most valid cell of a column has no upper partner and duplicates
/// the alpha of the pair just below it (for a fully valid column this is
/// the familiar top-row-copies-second-row rule).
template <class Ops>
AlphaMatrix build_alpha_with(const RangeImage& img,
                             AlphaOrientation orientation = AlphaOrientation::Corrected) {
    AlphaMatrix out(img.height, img.width);
    for (int col = 0; col < img.width; ++col) {
        int upper = -1;   // most recent valid row above the scan position
        int first = -1;   // top-most valid row
        int second = -1;  // its partner below
        for (int row = 0; row < img.height; ++row) {
            if (!img.valid.at(row, col)) {
                continue;
            }
            if (upper >= 0) {
                out.alpha.at(row, col) =
                    Ops::alpha_cell(img.range.at(row, col), img.pitch.at(row, col),
                                    img.range.at(upper, col), img.pitch.at(upper, col),
                                    orientation);
                out.valid.at(row, col) = 1;
            }
            if (first < 0) {
                first = row;
            } else if (second < 0) {
                second = row;
            }
            upper = row;
        }
        if (second >= 0) {
            out.alpha.at(first, col) = out.alpha.at(second, col);
            out.valid.at(first, col) = 1;
        }
    }
    return out;
}

AlphaMatrix build_alpha(const RangeImage& img,
                        AlphaOrientation orientation = AlphaOrientation::Corrected);

}  // namespace groundseg
