#include "groundseg/fixed_point.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace groundseg {

namespace {

constexpr std::int64_t kRawMax = std::numeric_limits<std::int32_t>::max();
constexpr std::int64_t kRawMin = std::numeric_limits<std::int32_t>::min();

FixedPoint saturate(std::int64_t raw, bool* saturated = nullptr) {
    if (raw > kRawMax) {
        if (saturated != nullptr) {
            *saturated = true;
        }
        return FixedPoint{static_cast<std::int32_t>(kRawMax)};
    }
    if (raw < kRawMin) {
        if (saturated != nullptr) {
            *saturated = true;
        }
        return FixedPoint{static_cast<std::int32_t>(kRawMin)};
    }
    return FixedPoint{static_cast<std::int32_t>(raw)};
}

/// Floor-shift with round to nearest, ties to even. `shift` in 1..62.
std::int64_t shift_round_even(std::int64_t v, int shift) {
    const std::int64_t q = v >> shift;  // floor
    const std::int64_t r = v - (q << shift);
    const std::int64_t half = std::int64_t{1} << (shift - 1);
    if (r > half || (r == half && (q & 1))) {
        return q + 1;
    }
    return q;
}

// CORDIC internals. Angles accumulate with 40 fraction bits; the x/y
// datapath is normalized so the larger input magnitude lands near bit 44,
// leaving headroom for the ~1.647 gain and the per-step additions.
constexpr int kAngleFrac = 40;
constexpr int kDataBit = 44;
constexpr int kMaxIterations = 40;

const std::array<std::int64_t, kMaxIterations>& atan_table() {
    static const auto table = [] {
        std::array<std::int64_t, kMaxIterations> t{};
        for (int i = 0; i < kMaxIterations; ++i) {
            t[i] = std::llround(std::atan(std::ldexp(1.0, -i)) * std::ldexp(1.0, kAngleFrac));
        }
        return t;
    }();
    return table;
}

/// Rotation-mode gain correction 1/prod(sqrt(1 + 2^-2i)) for n steps.
std::int64_t gain_inverse_raw(int n) {
    static const auto table = [] {
        std::array<double, kMaxIterations + 1> k{};
        k[0] = 1.0;
        for (int i = 0; i < kMaxIterations; ++i) {
            k[i + 1] = k[i] / std::sqrt(1.0 + std::ldexp(1.0, -2 * i));
        }
        return k;
    }();
    return std::llround(table[static_cast<std::size_t>(n)] * std::ldexp(1.0, kDataBit));
}

/// Vectoring sweep for x >= 0: drives y to zero, returns the swept angle
/// with kAngleFrac fraction bits. Exact zero y ends the loop early so
/// axis-aligned inputs come out exact.
std::int64_t vector_to_angle(std::int64_t x, std::int64_t y, int iterations) {
    std::int64_t angle = 0;
    const auto& atans = atan_table();
    for (int i = 0; i < iterations; ++i) {
        if (y == 0) {
            break;
        }
        if (y > 0) {
            const std::int64_t xn = x + (y >> i);
            y -= x >> i;
            x = xn;
            angle += atans[static_cast<std::size_t>(i)];
        } else {
            const std::int64_t xn = x - (y >> i);
            y += x >> i;
            x = xn;
            angle -= atans[static_cast<std::size_t>(i)];
        }
    }
    return angle;
}

}  // namespace

FixedPoint quantize(double v, bool* saturated) {
    if (std::isnan(v)) {
        if (saturated != nullptr) {
            *saturated = true;
        }
        return FixedPoint{0};
    }
    const double scaled = v * FixedPoint::kScale;
    if (scaled >= static_cast<double>(kRawMax) + 0.5 || scaled < static_cast<double>(kRawMin)) {
        if (saturated != nullptr) {
            *saturated = true;
        }
        return FixedPoint{static_cast<std::int32_t>(scaled < 0 ? kRawMin : kRawMax)};
    }
    // nearbyint under the default rounding mode: nearest, ties to even
    return FixedPoint{static_cast<std::int32_t>(std::nearbyint(scaled))};
}

double dequantize(FixedPoint f) { return static_cast<double>(f.raw) / FixedPoint::kScale; }

FixedPoint fx_add(FixedPoint a, FixedPoint b) {
    return saturate(static_cast<std::int64_t>(a.raw) + b.raw);
}

FixedPoint fx_sub(FixedPoint a, FixedPoint b) {
    return saturate(static_cast<std::int64_t>(a.raw) - b.raw);
}

FixedPoint fx_abs_diff(FixedPoint a, FixedPoint b) {
    const std::int64_t d = static_cast<std::int64_t>(a.raw) - b.raw;
    return saturate(d < 0 ? -d : d);
}

FixedPoint fx_mul(FixedPoint a, FixedPoint b) {
    const std::int64_t prod = static_cast<std::int64_t>(a.raw) * b.raw;
    return saturate(shift_round_even(prod, FixedPoint::kFractionBits));
}

FixedPoint fx_mean(std::int64_t raw_sum, std::int64_t count) {
    if (count <= 0) {
        throw std::invalid_argument("fx_mean: count must be positive");
    }
    std::int64_t q = raw_sum / count;
    std::int64_t r = raw_sum % count;
    if (r < 0) {  // switch truncation to floor so the remainder is non-negative
        q -= 1;
        r += count;
    }
    if (2 * r > count || (2 * r == count && (q & 1))) {
        ++q;
    }
    return saturate(q);
}

FixedPoint cordic_atan2(FixedPoint z, FixedPoint x, int iterations) {
    if (iterations < 1 || iterations > kMaxIterations) {
        throw std::invalid_argument("cordic_atan2: iterations out of range");
    }
    std::int64_t yv = z.raw;
    std::int64_t xv = x.raw;
    if (yv == 0 && xv == 0) {
        return FixedPoint{0};
    }
    const bool neg_y = yv < 0;
    if (neg_y) {
        yv = -yv;
    }
    const bool neg_x = xv < 0;
    if (neg_x) {
        xv = -xv;
    }

    // Common left shift: angles are scale-invariant, and small raw inputs
    // would otherwise lose their low bits to the iterative right shifts.
    const std::uint64_t mag = static_cast<std::uint64_t>(yv > xv ? yv : xv);
    const int msb = 63 - std::countl_zero(mag);
    const int up = kDataBit - msb;
    if (up > 0) {
        yv <<= up;
        xv <<= up;
    }

    std::int64_t angle = vector_to_angle(xv, yv, iterations);
    if (neg_x) {
        static const std::int64_t kPi =
            std::llround(std::numbers::pi_v<double> * std::ldexp(1.0, kAngleFrac));
        angle = kPi - angle;
    }
    if (neg_y) {
        angle = -angle;
    }
    return saturate(shift_round_even(angle, kAngleFrac - FixedPoint::kFractionBits));
}

void cordic_sincos(FixedPoint angle, FixedPoint& sin_out, FixedPoint& cos_out, int iterations) {
    if (iterations < 1 || iterations > kMaxIterations) {
        throw std::invalid_argument("cordic_sincos: iterations out of range");
    }
    std::int64_t x = gain_inverse_raw(iterations);
    std::int64_t y = 0;
    std::int64_t residual = static_cast<std::int64_t>(angle.raw)
                            << (kAngleFrac - FixedPoint::kFractionBits);
    const auto& atans = atan_table();
    for (int i = 0; i < iterations; ++i) {
        const std::int64_t xs = x >> i;
        const std::int64_t ys = y >> i;
        if (residual >= 0) {
            x -= ys;
            y += xs;
            residual -= atans[static_cast<std::size_t>(i)];
        } else {
            x += ys;
            y -= xs;
            residual += atans[static_cast<std::size_t>(i)];
        }
    }
    const int down = kDataBit - FixedPoint::kFractionBits;
    sin_out = saturate(shift_round_even(y, down));
    cos_out = saturate(shift_round_even(x, down));
}

}  // namespace groundseg
