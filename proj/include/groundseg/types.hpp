#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "groundseg/grid.hpp"

namespace groundseg {

struct Point {
    double x = 0.0;  // meters
    double y = 0.0;
    double z = 0.0;
    double intensity = 0.0;  // unitless, [0,1]
};

struct PointCloud {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Spinning-LiDAR geometry: vertical channel count, azimuth bins and FOV.
struct SensorConfig {
    int channels = 64;
    int horizontal_resolution = 2048;
    double fov_up_deg = 3.0;
    double fov_down_deg = -25.0;
    double max_range_m = 120.0;

    /// Known presets: "hdl32", "hdl64", "os64", "os128".
    static SensorConfig preset(std::string_view name);

    /// Throws std::invalid_argument when outside the supported envelope
    /// (channels 16..256, width >= 360, fov_up > fov_down, 0 < max_range <= 255).
    void validate() const;
};

/// Organized spherical projection of one scan. Row 0 is the top of the
/// image (highest pitch). range == 0.0 marks an empty cell; `valid`
/// mirrors that. `pitch_valid` is tracked separately because pitch repair
/// fills angles into cells that still have no range return.
struct RangeImage {
    int height = 0;
    int width = 0;
    Grid<double> range;             // meters
    Grid<double> pitch;             // radians
    Grid<double> yaw;               // radians
    Grid<std::uint8_t> valid;       // range validity
    Grid<std::uint8_t> pitch_valid;

    RangeImage() = default;
    RangeImage(int h, int w)
        : height(h), width(w), range(h, w, 0.0), pitch(h, w, 0.0), yaw(h, w, 0.0),
          valid(h, w, 0), pitch_valid(h, w, 0) {}
};

enum class PointPlacement : std::uint8_t {
    Owner,     // point defines its cell's range
    Shadowed,  // landed in a cell but lost the nearest-wins collision
    Dropped,   // zero range or beyond max_range; never projected
};

struct PointIndex {
    std::int32_t row = -1;
    std::int32_t col = -1;
    PointPlacement placement = PointPlacement::Dropped;
};

struct ProjectionResult {
    RangeImage image;
    std::vector<PointIndex> index_map;  // one entry per input point
    Grid<std::int32_t> cell_point;      // winning point index per cell, -1 when empty
    std::size_t dropped = 0;
};

}  // namespace groundseg
