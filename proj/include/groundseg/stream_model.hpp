#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "groundseg/fixed_point.hpp"
#include "groundseg/params.hpp"
#include "groundseg/propagate.hpp"
#include "groundseg/types.hpp"

namespace groundseg {

inline constexpr int kCordicIterations = 24;

/// Alpha kernel of the fixed-point datapath: CORDIC sine/cosine of the
/// pitches, Q8.23 multiplies, absolute differences, CORDIC arctangent.
FixedPoint fx_alpha_cell(FixedPoint r_a, FixedPoint p_a, FixedPoint r_b, FixedPoint p_b,
                         AlphaOrientation orientation, int cordic_iterations = kCordicIterations);

/// Numeric policy that routes the functional pipeline through the Q8.23
/// kernels. Values entering and leaving every operation sit exactly on
/// the fixed-point grid, so double round-trips are lossless.
struct FixedOps {
    static bool diff_lt(double a, double b, double thresh);
    static bool close_le(double a, double b, double thresh);
    static bool le(double a, double b);
    static double average(const std::vector<double>& members);
    static double alpha_cell(double r_a, double p_a, double r_b, double p_b,
                             AlphaOrientation orientation);
};

/// Snaps range/pitch/yaw onto the Q8.23 grid. Counts saturated samples.
RangeImage quantize_image(const RangeImage& img, std::size_t* saturated = nullptr);

/// Functional pipeline under quantized arithmetic (the reference the
/// stream machine is checked against). Quantizes the image first.
LabelMask segment_quantized(const RangeImage& img, const SegParams& p);

struct StageReport {
    std::string name;
    std::uint64_t warmup_cycles = 0;
};

struct PipelineReport {
    std::uint64_t total_cycles = 0;
    std::uint64_t warmup_cycles = 0;
    double clock_hz = 0.0;
    std::vector<StageReport> stages;

    double estimated_seconds() const { return static_cast<double>(total_cycles) / clock_hz; }
};

/// Streaming Q8.23 model of the segmentation datapath: vertical index
/// inversion, quantization, line-buffered range repair, pitch repair,
/// CORDIC alpha, seed initialization with a parity flip buffer, then a
/// configurable stack of flood-fill blocks (one sweep each). One point
/// per cycle after warm-up. The seed buffer is never bulk-cleared; its
/// truth encoding flips each frame, so the object carries state across
/// process() calls.
class StreamPipeline {
  public:
    StreamPipeline(SegParams params, int stacked_flood_blocks, double clock_hz);

    std::pair<LabelMask, PipelineReport> process(const RangeImage& img);

    int stacked_flood_blocks() const { return blocks_; }

  private:
    SegParams params_;
    int blocks_ = 1;
    double clock_hz_ = 0.0;

    // seed flip buffer: per-column last written bit plus the per-frame truth encoding
    std::vector<std::uint8_t> seed_slots_;
    std::uint8_t seed_truth_ = 0;
};

/// Single-frame convenience wrapper around StreamPipeline.
std::pair<LabelMask, PipelineReport> run_pipeline(const RangeImage& img, const SegParams& p,
                                                  int stacked_flood_blocks, double clock_hz);

}  // namespace groundseg
