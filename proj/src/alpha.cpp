#include "groundseg/alpha.hpp"

namespace groundseg {

double alpha_cell(double r_a, double p_a, double r_b, double p_b, AlphaOrientation orientation) {
    return FloatOps::alpha_cell(r_a, p_a, r_b, p_b, orientation);
}

AlphaMatrix build_alpha(const RangeImage& img, AlphaOrientation orientation) {
    return build_alpha_with<FloatOps>(img, orientation);
}

}  // namespace groundseg
