#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "groundseg/types.hpp"

namespace groundseg {

/// Semantic classes counted as ground truth: roads (40), parking (44),
/// sidewalks (48) and other ground (49).
inline constexpr std::uint16_t kGroundClasses[] = {40, 44, 48, 49};

/// Loads a SemanticKITTI velodyne scan: four little-endian float32 per
/// point (x, y, z, intensity). Throws on IO failure, byte length not a
/// multiple of 16, or non-finite coordinates.
PointCloud load_scan(const std::filesystem::path& path);

/// Loads a SemanticKITTI label file (one little-endian uint32 per point,
/// low 16 bits = semantic class). Throws when the byte length does not
/// match 4 * n_points.
std::vector<std::uint16_t> load_labels(const std::filesystem::path& path, std::size_t n_points);

/// True where the class is one of kGroundClasses.
std::vector<std::uint8_t> ground_truth_mask(const std::vector<std::uint16_t>& classes);

/// Spherical projection into an organized range image. Nearest point wins
/// cell collisions (ties go to the lower original index); zero-range and
/// beyond-max-range points are dropped with a counter.
ProjectionResult project(const PointCloud& cloud, const SensorConfig& cfg);

/// Projects a per-point mask onto the image grid: a cell is true iff its
/// winning point is true. Cells with no winner stay false.
Grid<std::uint8_t> mask_to_grid(const std::vector<std::uint8_t>& point_mask,
                                const ProjectionResult& proj);

}  // namespace groundseg
