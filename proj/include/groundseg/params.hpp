#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "groundseg/types.hpp"

namespace groundseg {

enum class NeighborMode {
    FourWay,        // orthogonal 1-step neighbors only
    EightWay,       // orthogonal + diagonal 1-step neighbors
    CrossEightWay,  // orthogonal 1-step + orthogonal 2-step (no diagonals)
};

enum class RepairPairing {
    CrossProduct,  // every (up, down) combination inside the window
    Equidistant,   // only pairs symmetric about the window center
};

enum class AlphaOrientation {
    Corrected,  // vertical difference uses sin(pitch); flat ground gives alpha = 0
    AsPrinted,  // swapped sin/cos assignment, kept for fidelity experiments
};

struct SegParams {
    double repair_range_thresh_m = 0.5;
    int repair_half_window = 2;  // window = 2*half + 1 cells
    double seed_thresh_rad = 0.7853981633974483;    // 45 deg
    double alpha_thresh_rad = 0.08726646259971647;  // 5 deg
    int flood_iterations = 10;
    NeighborMode neighbor_mode = NeighborMode::CrossEightWay;
    RepairPairing repair_pairing = RepairPairing::CrossProduct;
    AlphaOrientation alpha_orientation = AlphaOrientation::Corrected;
    bool alternate_sweep = false;

    /// Throws std::invalid_argument when a threshold is non-positive,
    /// flood_iterations < 1 or repair_half_window < 1.
    void validate() const;

    /// Streaming datapath defaults: 11-tap repair window.
    static SegParams stream_defaults();
};

NeighborMode neighbor_mode_from_string(std::string_view s);
std::string to_string(NeighborMode m);

/// Reads SegParams from a .json or .toml file (flat key = value subset).
SegParams load_seg_params(const std::filesystem::path& path);

/// Reads SensorConfig from a .json or .toml file, or resolves a preset name.
SensorConfig load_sensor_config(const std::string& name_or_path);

}  // namespace groundseg
