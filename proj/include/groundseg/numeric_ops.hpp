#pragma once

#include <cmath>
#include <vector>

#include "groundseg/params.hpp"

namespace groundseg {

/// Arithmetic policy used by the functional pipeline. The default policy
/// below computes in double precision; the stream model provides a
/// fixed-point policy with identical semantics so the same pipeline code
/// can be run under quantized arithmetic.
///
/// A policy supplies:
///   diff_lt(a, b, thresh)       |a - b| < thresh
///   close_le(a, b, thresh)      |a - b| <= thresh
///   le(a, b)                    a <= b
///   average(members)            mean of the window members
///   alpha_cell(ra, pa, rb, pb, orientation)
struct FloatOps {
    static bool diff_lt(double a, double b, double thresh) { return std::abs(a - b) < thresh; }

    static bool close_le(double a, double b, double thresh) { return std::abs(a - b) <= thresh; }

    static bool le(double a, double b) { return a <= b; }

    static double average(const std::vector<double>& members) {
        double sum = 0.0;
        for (double m : members) {
            sum += m;
        }
        return members.empty() ? 0.0 : sum / static_cast<double>(members.size());
    }

    static double alpha_cell(double r_a, double p_a, double r_b, double p_b,
                             AlphaOrientation orientation) {
        const double za = r_a * std::sin(p_a);
        const double zb = r_b * std::sin(p_b);
        const double xa = r_a * std::cos(p_a);
        const double xb = r_b * std::cos(p_b);
        double dz = std::abs(za - zb);
        double dx = std::abs(xa - xb);
        if (orientation == AlphaOrientation::AsPrinted) {
            std::swap(dz, dx);
        }
        if (dz == 0.0 && dx == 0.0) {
            return 0.0;
        }
        return std::atan2(dz, dx);
    }
};

}  // namespace groundseg
