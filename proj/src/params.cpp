#include "groundseg/params.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace groundseg {

namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

/// Flat `key = value` TOML subset: section headers are skipped, values
/// are numbers, booleans or quoted strings. Enough for parameter files.
std::map<std::string, std::string> parse_flat_toml(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty() || line.front() == '[') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("malformed config line: " + line);
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        kv[key] = value;
    }
    return kv;
}

json config_as_json(const std::filesystem::path& path) {
    if (lower(path.extension().string()) == ".json") {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open config file: " + path.string());
        }
        return json::parse(in);
    }
    json j = json::object();
    for (const auto& [key, value] : parse_flat_toml(path)) {
        if (value == "true" || value == "false") {
            j[key] = (value == "true");
        } else {
            try {
                std::size_t used = 0;
                const double d = std::stod(value, &used);
                if (used == value.size()) {
                    j[key] = d;
                    continue;
                }
            } catch (const std::exception&) {
            }
            j[key] = value;
        }
    }
    return j;
}

}  // namespace

void SegParams::validate() const {
    if (repair_range_thresh_m <= 0.0 || seed_thresh_rad <= 0.0 || alpha_thresh_rad <= 0.0) {
        throw std::invalid_argument("SegParams: thresholds must be positive");
    }
    if (flood_iterations < 1) {
        throw std::invalid_argument("SegParams: flood_iterations must be >= 1");
    }
    if (repair_half_window < 1) {
        throw std::invalid_argument("SegParams: repair_half_window must be >= 1");
    }
}

SegParams SegParams::stream_defaults() {
    SegParams p;
    p.repair_half_window = 5;
    return p;
}

NeighborMode neighbor_mode_from_string(std::string_view s) {
    const std::string v = lower(s);
    if (v == "four_way") {
        return NeighborMode::FourWay;
    }
    if (v == "eight_way") {
        return NeighborMode::EightWay;
    }
    if (v == "cross_eight_way") {
        return NeighborMode::CrossEightWay;
    }
    throw std::invalid_argument("unknown neighbor mode: " + std::string(s));
}

std::string to_string(NeighborMode m) {
    switch (m) {
        case NeighborMode::FourWay:
            return "four_way";
        case NeighborMode::EightWay:
            return "eight_way";
        case NeighborMode::CrossEightWay:
            return "cross_eight_way";
    }
    return "unknown";
}

SegParams load_seg_params(const std::filesystem::path& path) {
    const json j = config_as_json(path);
    SegParams p;
    if (j.contains("repair_range_thresh_m")) p.repair_range_thresh_m = j["repair_range_thresh_m"];
    if (j.contains("repair_half_window")) p.repair_half_window = static_cast<int>(j["repair_half_window"].get<double>());
    if (j.contains("seed_thresh_rad")) p.seed_thresh_rad = j["seed_thresh_rad"];
    if (j.contains("alpha_thresh_rad")) p.alpha_thresh_rad = j["alpha_thresh_rad"];
    if (j.contains("flood_iterations")) p.flood_iterations = static_cast<int>(j["flood_iterations"].get<double>());
    if (j.contains("neighbor_mode")) p.neighbor_mode = neighbor_mode_from_string(j["neighbor_mode"].get<std::string>());
    if (j.contains("repair_pairing")) {
        const std::string v = lower(j["repair_pairing"].get<std::string>());
        if (v == "cross_product") {
            p.repair_pairing = RepairPairing::CrossProduct;
        } else if (v == "equidistant") {
            p.repair_pairing = RepairPairing::Equidistant;
        } else {
            throw std::invalid_argument("unknown repair_pairing: " + v);
        }
    }
    if (j.contains("alpha_orientation")) {
        const std::string v = lower(j["alpha_orientation"].get<std::string>());
        if (v == "corrected") {
            p.alpha_orientation = AlphaOrientation::Corrected;
        } else if (v == "as_printed") {
            p.alpha_orientation = AlphaOrientation::AsPrinted;
        } else {
            throw std::invalid_argument("unknown alpha_orientation: " + v);
        }
    }
    if (j.contains("alternate_sweep")) p.alternate_sweep = j["alternate_sweep"].get<bool>();
    p.validate();
    return p;
}

SensorConfig SensorConfig::preset(std::string_view name) {
    const std::string v = lower(name);
    SensorConfig cfg;
    if (v == "hdl32" || v == "hdl-32") {
        cfg.channels = 32;
        cfg.horizontal_resolution = 2048;
        cfg.fov_up_deg = 10.67;
        cfg.fov_down_deg = -30.67;
    } else if (v == "hdl64" || v == "hdl-64" || v == "os64" || v == "os-64") {
        cfg.channels = 64;
        cfg.horizontal_resolution = 2048;
        cfg.fov_up_deg = 3.0;
        cfg.fov_down_deg = -25.0;
    } else if (v == "os128" || v == "os-128") {
        cfg.channels = 128;
        cfg.horizontal_resolution = 2048;
        cfg.fov_up_deg = 22.5;
        cfg.fov_down_deg = -22.5;
    } else {
        throw std::invalid_argument("unknown sensor preset: " + std::string(name));
    }
    cfg.validate();
    return cfg;
}

void SensorConfig::validate() const {
    if (channels < 16 || channels > 256) {
        throw std::invalid_argument("SensorConfig: channels must be in 16..256");
    }
    if (horizontal_resolution < 360) {
        throw std::invalid_argument("SensorConfig: horizontal_resolution must be >= 360");
    }
    if (!(fov_up_deg > fov_down_deg)) {
        throw std::invalid_argument("SensorConfig: fov_up must exceed fov_down");
    }
    if (!(max_range_m > 0.0) || max_range_m > 255.0) {
        throw std::invalid_argument("SensorConfig: max_range must be in (0, 255]");
    }
}

SensorConfig load_sensor_config(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) {
        const json j = config_as_json(name_or_path);
        SensorConfig cfg;
        if (j.contains("channels")) cfg.channels = static_cast<int>(j["channels"].get<double>());
        if (j.contains("horizontal_resolution")) {
            cfg.horizontal_resolution = static_cast<int>(j["horizontal_resolution"].get<double>());
        }
        if (j.contains("fov_up_deg")) cfg.fov_up_deg = j["fov_up_deg"];
        if (j.contains("fov_down_deg")) cfg.fov_down_deg = j["fov_down_deg"];
        if (j.contains("max_range_m")) cfg.max_range_m = j["max_range_m"];
        cfg.validate();
        return cfg;
    }
    return SensorConfig::preset(name_or_path);
}

}  // namespace groundseg
