#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "ssfilt/imageio.hpp"
#include "ssfilt/pipelines.hpp"

namespace ssfilt {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
    return v;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
    return i;
}

}  // namespace detail

/// Applies one `key = value` setting to a pipeline config. Unknown keys and
/// type mismatches throw, naming the key.
inline void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                               const std::string& value) {
    using detail::parse_int;
    using detail::parse_number;
    if (key == "radius" || key == "r") {
        cfg.filter.radius = parse_int(key, value);
    } else if (key == "epsilon" || key == "eps") {
        cfg.filter.epsilon = parse_number(key, value);
    } else if (key == "kappa") {
        cfg.filter.kappa = parse_number(key, value);
        cfg.filter.kappa_map.reset();
    } else if (key == "kappa_map") {
        cfg.filter.kappa_map = load_field(value);
    } else if (key == "scale" || key == "s") {
        cfg.filter.scale = parse_number(key, value);
    } else if (key == "iterations" || key == "iters") {
        cfg.filter.iterations = parse_int(key, value);
    } else if (key == "weights") {
        if (value == "uniform")
            cfg.filter.weights = WeightMode::Uniform;
        else if (value == "adaptive")
            cfg.filter.weights = WeightMode::Adaptive;
        else
            throw std::invalid_argument("weights: expected 'uniform' or 'adaptive'");
    } else if (key == "color") {
        if (value == "hsv")
            cfg.filter.color_mode = ColorMode::HsvValue;
        else if (value == "rgb" || value == "per_channel")
            cfg.filter.color_mode = ColorMode::PerChannel;
        else
            throw std::invalid_argument("color: expected 'rgb' or 'hsv'");
    } else if (key == "kappa_min") {
        cfg.nlt.kappa_min = parse_number(key, value);
    } else if (key == "kappa_max") {
        cfg.nlt.kappa_max = parse_number(key, value);
    } else if (key == "growth" || key == "c") {
        cfg.nlt.growth = parse_number(key, value);
    } else if (key == "midpoint" || key == "t0") {
        cfg.nlt.midpoint = parse_number(key, value);
    } else if (key == "entropy_window") {
        cfg.entropy_window = parse_int(key, value);
    } else if (key == "refine_radius") {
        cfg.refine_radius = parse_int(key, value);
    } else if (key == "refine_epsilon") {
        cfg.refine_epsilon = parse_number(key, value);
    } else if (key == "feather_radius") {
        cfg.feather_radius = parse_int(key, value);
    } else if (key == "feather_epsilon") {
        cfg.feather_epsilon = parse_number(key, value);
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

/// Parses a `key = value` config file ('#' starts a comment) on top of the
/// given defaults and validates the result. Values set later override earlier
/// ones; CLI flags are applied after this and override file values.
inline PipelineConfig parse_config(const std::string& path,
                                   PipelineConfig cfg = PipelineConfig{}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        apply_config_entry(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

}  // namespace ssfilt
