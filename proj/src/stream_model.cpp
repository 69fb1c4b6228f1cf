#include "groundseg/stream_model.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace groundseg {

namespace {

/// Frame representation inside the datapath: raw Q8.23 words only.
struct QuantFrame {
    int height = 0;
    int width = 0;
    Grid<std::int32_t> range;
    Grid<std::int32_t> pitch;
    Grid<std::uint8_t> valid;
    Grid<std::uint8_t> pitch_valid;

    QuantFrame(int h, int w)
        : height(h), width(w), range(h, w, 0), pitch(h, w, 0), valid(h, w, 0),
          pitch_valid(h, w, 0) {}
};

struct RawAlpha {
    int height = 0;
    int width = 0;
    Grid<std::int32_t> alpha;
    Grid<std::uint8_t> valid;

    RawAlpha(int h, int w) : height(h), width(w), alpha(h, w, 0), valid(h, w, 0) {}
};

QuantFrame quantize_frame(const RangeImage& img, std::size_t* saturated) {
    QuantFrame out(img.height, img.width);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            bool sat = false;
            out.range.at(r, c) = quantize(img.range.at(r, c), &sat).raw;
            out.pitch.at(r, c) = quantize(img.pitch.at(r, c), &sat).raw;
            out.valid.at(r, c) = img.valid.at(r, c);
            out.pitch_valid.at(r, c) = img.pitch_valid.at(r, c);
            if (sat && saturated != nullptr) {
                ++*saturated;
            }
        }
    }
    return out;
}

/// Vertical window averaging stage. Emits bottom row first; every read
/// stays inside the +-half window the line buffers would hold.
QuantFrame stage_range_repair(const QuantFrame& in, const SegParams& p) {
    QuantFrame out = in;
    const int half = p.repair_half_window;
    const std::int32_t thresh = quantize(p.repair_range_thresh_m).raw;
    for (int r = in.height - 1; r >= 0; --r) {
        for (int c = 0; c < in.width; ++c) {
            if (in.valid.at(r, c)) {
                continue;
            }
            std::int64_t sum = 0;
            std::int64_t members = 0;
            auto pair_in = [&](int up, int down) {
                if (up < 0 || down >= in.height || !in.valid.at(up, c) ||
                    !in.valid.at(down, c)) {
                    return;
                }
                const FixedPoint ru{in.range.at(up, c)};
                const FixedPoint rd{in.range.at(down, c)};
                if (fx_abs_diff(ru, rd).raw < thresh) {
                    sum += static_cast<std::int64_t>(ru.raw) + rd.raw;
                    members += 2;
                }
            };
            if (p.repair_pairing == RepairPairing::CrossProduct) {
                for (int u = 1; u <= half; ++u) {
                    for (int d = 1; d <= half; ++d) {
                        pair_in(r - u, r + d);
                    }
                }
            } else {
                for (int s = 1; s <= half; ++s) {
                    pair_in(r - s, r + s);
                }
            }
            if (members > 0) {
                out.range.at(r, c) = fx_mean(sum, members).raw;
                out.valid.at(r, c) = 1;
            }
        }
    }
    return out;
}

/// Row-local nearest-neighbor pitch fill (one line of lookahead covers
/// the backfill of leading gaps).
void stage_pitch_repair(QuantFrame& frame) {
    for (int r = frame.height - 1; r >= 0; --r) {
        int first = -1;
        for (int c = 0; c < frame.width; ++c) {
            if (frame.pitch_valid.at(r, c)) {
                first = c;
                break;
            }
        }
        if (first < 0) {
            continue;
        }
        std::int32_t last = frame.pitch.at(r, first);
        for (int c = 0; c < frame.width; ++c) {
            if (frame.pitch_valid.at(r, c)) {
                last = frame.pitch.at(r, c);
            } else {
                frame.pitch.at(r, c) = last;
                frame.pitch_valid.at(r, c) = 1;
            }
        }
    }
}

/// Alpha stage: one pending register per column holds the last valid
/// sample; when the next valid sample (the upper partner) streams in, the
/// pending cell's alpha is emitted and latched. At end of frame each
/// column's final pending cell (its top-most return, which never found an
/// upper partner) is drained with a copy of the latched alpha — on a
/// fully valid column that is exactly the top-line duplication.
RawAlpha stage_alpha(const QuantFrame& frame, const SegParams& p) {
    RawAlpha out(frame.height, frame.width);
    const std::size_t w = static_cast<std::size_t>(frame.width);
    std::vector<int> pending(w, -1);
    std::vector<std::int32_t> latched(w, 0);
    std::vector<std::uint8_t> has_latch(w, 0);
    for (int r = frame.height - 1; r >= 0; --r) {
        for (int c = 0; c < frame.width; ++c) {
            if (!frame.valid.at(r, c)) {
                continue;
            }
            const int lower = pending[static_cast<std::size_t>(c)];
            if (lower >= 0) {
                const FixedPoint a = fx_alpha_cell(
                    FixedPoint{frame.range.at(lower, c)}, FixedPoint{frame.pitch.at(lower, c)},
                    FixedPoint{frame.range.at(r, c)}, FixedPoint{frame.pitch.at(r, c)},
                    p.alpha_orientation);
                out.alpha.at(lower, c) = a.raw;
                out.valid.at(lower, c) = 1;
                latched[static_cast<std::size_t>(c)] = a.raw;
                has_latch[static_cast<std::size_t>(c)] = 1;
            }
            pending[static_cast<std::size_t>(c)] = r;
        }
    }
    for (int c = 0; c < frame.width; ++c) {
        const int top = pending[static_cast<std::size_t>(c)];
        if (top >= 0 && has_latch[static_cast<std::size_t>(c)]) {
            out.alpha.at(top, c) = latched[static_cast<std::size_t>(c)];
            out.valid.at(top, c) = 1;
        }
    }
    return out;
}

/// One flood block: a full bottom-up, left-to-right sweep as a stream
/// machine. Cells already behind the write position are read from the
/// block's own output (the feedback FIFO); cells ahead come from the
/// input window.
LabelMask stage_flood_block(const LabelMask& in, const RawAlpha& alpha, const SegParams& p) {
    LabelMask out = in;
    const std::int32_t thresh = quantize(p.alpha_thresh_rad).raw;
    const int h = in.height;
    const int w = in.width;

    auto ground_at = [&](int r, int c, int at_r, int at_c) {
        // sweep order: rows bottom-up, columns left to right
        const bool behind = at_r > r || (at_r == r && at_c < c);
        const LabelMask& source = behind ? out : in;
        return source.is_ground(at_r, at_c);
    };
    auto close = [&](int r1, int c1, int r2, int c2) {
        return fx_abs_diff(FixedPoint{alpha.alpha.at(r1, c1)},
                           FixedPoint{alpha.alpha.at(r2, c2)})
                   .raw <= thresh;
    };
    auto cell_valid = [&](int r, int c) {
        return alpha.valid.in_bounds(r, c) && alpha.valid.at(r, c);
    };

    static constexpr int kOrtho[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    static constexpr int kDiag[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};

    for (int r = h - 1; r >= 0; --r) {
        for (int c = 0; c < w; ++c) {
            if (out.cells.at(r, c) != CellLabel::NotGround) {
                continue;
            }
            bool fills = false;
            for (const auto& d : kOrtho) {
                const int r1 = r + d[0];
                const int c1 = c + d[1];
                const bool s1_ok = cell_valid(r1, c1);
                if (s1_ok && ground_at(r, c, r1, c1) && close(r, c, r1, c1)) {
                    fills = true;
                    break;
                }
                if (p.neighbor_mode == NeighborMode::CrossEightWay && s1_ok) {
                    const int r2 = r + 2 * d[0];
                    const int c2 = c + 2 * d[1];
                    if (cell_valid(r2, c2) && ground_at(r, c, r2, c2) &&
                        close(r2, c2, r1, c1) && close(r, c, r2, c2)) {
                        fills = true;
                        break;
                    }
                }
            }
            if (!fills && p.neighbor_mode == NeighborMode::EightWay) {
                for (const auto& d : kDiag) {
                    const int r1 = r + d[0];
                    const int c1 = c + d[1];
                    if (cell_valid(r1, c1) && ground_at(r, c, r1, c1) && close(r, c, r1, c1)) {
                        fills = true;
                        break;
                    }
                }
            }
            if (fills) {
                out.cells.at(r, c) = CellLabel::Ground;
            }
        }
    }
    return out;
}

}  // namespace

FixedPoint fx_alpha_cell(FixedPoint r_a, FixedPoint p_a, FixedPoint r_b, FixedPoint p_b,
                         AlphaOrientation orientation, int cordic_iterations) {
    FixedPoint sa, ca, sb, cb;
    cordic_sincos(p_a, sa, ca, cordic_iterations);
    cordic_sincos(p_b, sb, cb, cordic_iterations);
    FixedPoint dz = fx_abs_diff(fx_mul(r_a, sa), fx_mul(r_b, sb));
    FixedPoint dx = fx_abs_diff(fx_mul(r_a, ca), fx_mul(r_b, cb));
    if (orientation == AlphaOrientation::AsPrinted) {
        std::swap(dz, dx);
    }
    return cordic_atan2(dz, dx, cordic_iterations);
}

bool FixedOps::diff_lt(double a, double b, double thresh) {
    return fx_abs_diff(quantize(a), quantize(b)).raw < quantize(thresh).raw;
}

bool FixedOps::close_le(double a, double b, double thresh) {
    return fx_abs_diff(quantize(a), quantize(b)).raw <= quantize(thresh).raw;
}

bool FixedOps::le(double a, double b) { return quantize(a).raw <= quantize(b).raw; }

double FixedOps::average(const std::vector<double>& members) {
    if (members.empty()) {
        return 0.0;
    }
    std::int64_t sum = 0;
    for (const double m : members) {
        sum += quantize(m).raw;
    }
    return dequantize(fx_mean(sum, static_cast<std::int64_t>(members.size())));
}

double FixedOps::alpha_cell(double r_a, double p_a, double r_b, double p_b,
                            AlphaOrientation orientation) {
    return dequantize(fx_alpha_cell(quantize(r_a), quantize(p_a), quantize(r_b), quantize(p_b),
                                    orientation));
}

RangeImage quantize_image(const RangeImage& img, std::size_t* saturated) {
    RangeImage out = img;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            bool sat = false;
            out.range.at(r, c) = dequantize(quantize(img.range.at(r, c), &sat));
            out.pitch.at(r, c) = dequantize(quantize(img.pitch.at(r, c), &sat));
            out.yaw.at(r, c) = dequantize(quantize(img.yaw.at(r, c), &sat));
            if (sat && saturated != nullptr) {
                ++*saturated;
            }
        }
    }
    return out;
}

LabelMask segment_quantized(const RangeImage& img, const SegParams& p) {
    return segment_with<FixedOps>(quantize_image(img), p);
}

StreamPipeline::StreamPipeline(SegParams params, int stacked_flood_blocks, double clock_hz)
    : params_(params), blocks_(stacked_flood_blocks), clock_hz_(clock_hz) {
    params_.validate();
    if (blocks_ < 1) {
        throw std::invalid_argument("StreamPipeline: need at least one flood block");
    }
    if (!(clock_hz_ > 0.0)) {
        throw std::invalid_argument("StreamPipeline: clock must be positive");
    }
    if (params_.alternate_sweep) {
        throw std::invalid_argument("StreamPipeline: sweep direction is fixed in hardware");
    }
}

std::pair<LabelMask, PipelineReport> StreamPipeline::process(const RangeImage& img) {
    const int h = img.height;
    const int w = img.width;
    if (h < 1 || w < 1) {
        throw std::invalid_argument("StreamPipeline: empty frame");
    }

    // Seed flip buffer: the slot array is never cleared between frames;
    // only the truth encoding flips. Columns touched last frame read as
    // "unwritten" under the new encoding.
    if (seed_slots_.size() != static_cast<std::size_t>(w)) {
        seed_slots_.assign(static_cast<std::size_t>(w), seed_truth_);
    }
    seed_truth_ ^= 1;

    QuantFrame quantized = quantize_frame(img, nullptr);
    QuantFrame repaired = stage_range_repair(quantized, params_);
    stage_pitch_repair(repaired);
    const RawAlpha alpha = stage_alpha(repaired, params_);

    // Seed initialization: in the bottom-up raster the first alpha-valid
    // cell of a column is its bottom-most one, so the flip buffer needs a
    // single write port.
    const std::int32_t seed_raw = quantize(params_.seed_thresh_rad).raw;
    LabelMask labels(h, w);
    for (int r = h - 1; r >= 0; --r) {
        for (int c = 0; c < w; ++c) {
            if (!alpha.valid.at(r, c)) {
                continue;
            }
            auto& slot = seed_slots_[static_cast<std::size_t>(c)];
            if (slot != seed_truth_) {
                slot = seed_truth_;
                labels.cells.at(r, c) = alpha.alpha.at(r, c) <= seed_raw
                                            ? CellLabel::Ground
                                            : CellLabel::NotGround;
            } else {
                labels.cells.at(r, c) = CellLabel::NotGround;
            }
        }
    }
    for (auto& slot : seed_slots_) {
        slot = seed_truth_;  // columns with no valid cell still get stamped
    }

    for (int b = 0; b < blocks_; ++b) {
        labels = stage_flood_block(labels, alpha, params_);
    }

    PipelineReport report;
    report.clock_hz = clock_hz_;
    const std::uint64_t uw = static_cast<std::uint64_t>(w);
    const std::uint64_t repair_lines = static_cast<std::uint64_t>(params_.repair_half_window) + 1;
    const std::uint64_t flood_lines =
        params_.neighbor_mode == NeighborMode::CrossEightWay ? 3 : 2;
    report.stages.push_back({"index_inversion", 0});
    report.stages.push_back({"quantize", 1});
    report.stages.push_back({"range_repair", repair_lines * uw + repair_lines});
    report.stages.push_back({"pitch_repair", uw + 1});
    report.stages.push_back({"alpha", uw + 1 + 2 * kCordicIterations + 2});
    report.stages.push_back({"seed_init", 1});
    for (int b = 0; b < blocks_; ++b) {
        report.stages.push_back({"flood_block_" + std::to_string(b + 1),
                                 flood_lines * uw + flood_lines});
    }
    for (const StageReport& s : report.stages) {
        report.warmup_cycles += s.warmup_cycles;
    }
    report.total_cycles =
        static_cast<std::uint64_t>(h) * uw + report.warmup_cycles;
    return {std::move(labels), std::move(report)};
}

std::pair<LabelMask, PipelineReport> run_pipeline(const RangeImage& img, const SegParams& p,
                                                  int stacked_flood_blocks, double clock_hz) {
    StreamPipeline pipe(p, stacked_flood_blocks, clock_hz);
    return pipe.process(img);
}

}  // namespace groundseg
