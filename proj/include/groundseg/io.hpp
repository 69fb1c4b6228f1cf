#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "groundseg/types.hpp"

namespace groundseg {

/// One frame of a SemanticKITTI-layout sequence:
///   <root>/<seq>/velodyne/NNNNNN.bin and <root>/<seq>/labels/NNNNNN.label
struct FrameRef {
    std::string id;  // zero-padded stem, e.g. "000042"
    std::filesystem::path scan;
    std::filesystem::path labels;  // may not exist
    bool has_labels = false;
};

/// Lists frames of a sequence in ascending id order, optionally clipped
/// to [first, last]. Throws when the velodyne directory is missing.
std::vector<FrameRef> list_frames(const std::filesystem::path& dataset_root,
                                  const std::string& sequence,
                                  std::optional<int> first = std::nullopt,
                                  std::optional<int> last = std::nullopt);

/// Prediction files: one uint8 per point in scan order, 1 = ground.
void write_prediction(const std::filesystem::path& path, const std::vector<std::uint8_t>& mask);
std::vector<std::uint8_t> read_prediction(const std::filesystem::path& path,
                                          std::size_t n_points);

/// Writes via a temp file in the same directory followed by a rename.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace groundseg
