#include "groundseg/io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace groundseg {

std::vector<FrameRef> list_frames(const std::filesystem::path& dataset_root,
                                  const std::string& sequence, std::optional<int> first,
                                  std::optional<int> last) {
    const auto velodyne = dataset_root / sequence / "velodyne";
    if (!std::filesystem::is_directory(velodyne)) {
        throw std::runtime_error("no velodyne directory: " + velodyne.string());
    }
    const auto labels_dir = dataset_root / sequence / "labels";

    std::vector<FrameRef> frames;
    for (const auto& entry : std::filesystem::directory_iterator(velodyne)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".bin") {
            continue;
        }
        const std::string id = entry.path().stem().string();
        if (id.empty() || !std::all_of(id.begin(), id.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
            continue;
        }
        const int n = std::stoi(id);
        if ((first && n < *first) || (last && n > *last)) {
            continue;
        }
        FrameRef ref;
        ref.id = id;
        ref.scan = entry.path();
        ref.labels = labels_dir / (id + ".label");
        ref.has_labels = std::filesystem::is_regular_file(ref.labels);
        frames.push_back(std::move(ref));
    }
    std::sort(frames.begin(), frames.end(),
              [](const FrameRef& a, const FrameRef& b) { return a.id < b.id; });
    return frames;
}

void write_prediction(const std::filesystem::path& path, const std::vector<std::uint8_t>& mask) {
    std::string bytes(mask.begin(), mask.end());
    atomic_write(path, bytes);
}

std::vector<std::uint8_t> read_prediction(const std::filesystem::path& path,
                                          std::size_t n_points) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) {
        throw std::runtime_error("cannot open prediction: " + path.string());
    }
    const auto size = static_cast<std::size_t>(in.tellg());
    if (size != n_points) {
        throw std::runtime_error("prediction size mismatch (" + std::to_string(size) +
                                 " bytes for " + std::to_string(n_points) + " points): " +
                                 path.string());
    }
    std::vector<std::uint8_t> mask(n_points);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(mask.data()), static_cast<std::streamsize>(size));
    if (!in) {
        throw std::runtime_error("short read: " + path.string());
    }
    return mask;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace groundseg
