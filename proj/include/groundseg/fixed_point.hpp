#pragma once

#include <compare>
#include <cstdint>

namespace groundseg {

/// Signed Q8.23: 1 sign bit, 8 integer bits, 23 fraction bits in a
/// 32-bit word. Covers (-256, 256) with a step of 2^-23; range values up
/// to 255 m are representable.
struct FixedPoint {
    static constexpr int kFractionBits = 23;
    static constexpr double kScale = 8388608.0;  // 2^23

    std::int32_t raw = 0;

    friend bool operator==(FixedPoint a, FixedPoint b) { return a.raw == b.raw; }
    friend auto operator<=>(FixedPoint a, FixedPoint b) { return a.raw <=> b.raw; }
};

/// Round-to-nearest (ties to even) with saturation; `saturated`, when
/// given, is set on overflow and left alone otherwise.
FixedPoint quantize(double v, bool* saturated = nullptr);

double dequantize(FixedPoint f);

/// Saturating fixed-point helpers used by the stream datapath.
FixedPoint fx_add(FixedPoint a, FixedPoint b);
FixedPoint fx_sub(FixedPoint a, FixedPoint b);
FixedPoint fx_abs_diff(FixedPoint a, FixedPoint b);
FixedPoint fx_mul(FixedPoint a, FixedPoint b);

/// Mean of `count` raw values accumulated in 64-bit, rounded half to even.
FixedPoint fx_mean(std::int64_t raw_sum, std::int64_t count);

/// Vectoring-mode CORDIC arctangent with quadrant pre-rotation and input
/// normalization. atan2(0, 0) is defined as 0. With 24 iterations the
/// result stays within a few micro-radians of the reference.
FixedPoint cordic_atan2(FixedPoint z, FixedPoint x, int iterations = 24);

/// Rotation-mode CORDIC sine/cosine for |angle| <= pi/2 (the pitch range).
void cordic_sincos(FixedPoint angle, FixedPoint& sin_out, FixedPoint& cos_out,
                   int iterations = 24);

}  // namespace groundseg
