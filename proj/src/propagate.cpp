#include "groundseg/propagate.hpp"

namespace groundseg {

LabelMask init_seeds(const AlphaMatrix& alpha, const SegParams& p) {
    return init_seeds_with<FloatOps>(alpha, p);
}

std::size_t flood_step(LabelMask& labels, const AlphaMatrix& alpha, const SegParams& p,
                       SweepVisibility vis, SweepDirection dir) {
    return flood_step_with<FloatOps>(labels, alpha, p, vis, dir);
}

LabelMask segment(const RangeImage& img, const SegParams& p) {
    return segment_with<FloatOps>(img, p);
}

std::vector<std::uint8_t> back_project(const LabelMask& labels, const ProjectionResult& proj) {
    std::vector<std::uint8_t> out(proj.index_map.size(), 0);
    for (std::size_t i = 0; i < proj.index_map.size(); ++i) {
        const PointIndex& idx = proj.index_map[i];
        if (idx.placement == PointPlacement::Dropped) {
            continue;
        }
        out[i] = labels.is_ground(idx.row, idx.col) ? 1 : 0;
    }
    return out;
}

}  // namespace groundseg
