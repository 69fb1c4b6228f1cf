#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "groundseg/metrics.hpp"
#include "groundseg/types.hpp"

namespace groundseg {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(Rgb a, Rgb b) = default;
};

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    Raster() = default;
    Raster(int w, int h, Rgb fill) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

    std::size_t count(Rgb color) const;
};

struct RenderConfig {
    double meters_per_pixel = 0.1;
    double extent_m = 51.2;  // half-width of the rendered square
    bool draw_polygons = true;
};

// fixed palette: TP green, FN red, FP blue, other points gray
inline constexpr Rgb kColorTp{0, 200, 0};
inline constexpr Rgb kColorFn{220, 0, 0};
inline constexpr Rgb kColorFp{0, 80, 255};
inline constexpr Rgb kColorOther{128, 128, 128};
inline constexpr Rgb kColorBackground{255, 255, 255};
inline constexpr Rgb kColorGtOutline{0, 90, 0};
inline constexpr Rgb kColorPredOutline{0, 0, 120};

/// Top-down confusion raster of a frame, with the two BEV polygon
/// outlines overlaid when configured.
Raster render_bev(const PointCloud& cloud, const std::vector<std::uint8_t>& pred,
                  const std::vector<std::uint8_t>& gt, const RenderConfig& cfg);

/// Binary PPM (P6) writer.
void write_ppm(const std::filesystem::path& path, const Raster& raster);

}  // namespace groundseg
