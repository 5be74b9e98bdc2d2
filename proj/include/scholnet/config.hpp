#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scholnet/errors.hpp"
#include "scholnet/netbuild.hpp"
#include "scholnet/util.hpp"

namespace scholnet {

/// Pipeline configuration: `key = value` lines, '#' comments, flag
/// overrides applied on top. Relative paths resolve against the config
/// file's directory.
struct PipelineConfig {
    std::filesystem::path records;
    std::filesystem::path registry;
    std::optional<std::filesystem::path> aliases;
    std::optional<std::filesystem::path> gazetteer;
    std::filesystem::path out = "out";

    double threshold = 0.15;
    double damping = 0.85;
    EdgeWeightMode edge_weight_mode = EdgeWeightMode::Pairs;
    std::vector<int> snapshot_years;
    std::optional<std::pair<int, int>> year_range;  // inclusive record filter
    int top_k = 10;
    std::optional<std::string> category_filter;  // "Y" or "Y,X"

    std::string canonical_text;  // normalized form, hashed into manifests
};

namespace detail {

inline std::vector<int> parse_year_list(const std::string& value) {
    std::vector<int> years;
    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            int y = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return y;
        } catch (const std::exception&) {
            raise(Errc::ConfigError, "bad year '" + s + "'");
        }
    };
    auto range = value.find("..");
    if (range != std::string::npos) {
        int lo = parse_int(trim(value.substr(0, range)));
        int hi = parse_int(trim(value.substr(range + 2)));
        if (lo > hi) raise(Errc::ConfigError, "year range '" + value + "' is reversed");
        for (int y = lo; y <= hi; ++y) years.push_back(y);
        return years;
    }
    for (const auto& part : split(value, ','))
        if (!trim(part).empty()) years.push_back(parse_int(trim(part)));
    return years;
}

inline double parse_unit_interval(const std::string& value, const std::string& key, bool open) {
    double v = 0.0;
    try {
        v = std::stod(value);
    } catch (const std::exception&) {
        raise(Errc::ConfigError, key + " '" + value + "' is not a number");
    }
    bool ok = open ? (v > 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
    if (!ok) raise(Errc::ConfigError, key + " " + value + " out of range");
    return v;
}

}  // namespace detail

inline PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::ConfigError, "cannot open config " + path.string());
    std::filesystem::path base = path.parent_path();
    auto resolve_path = [&](const std::string& value) {
        std::filesystem::path p(value);
        return p.is_absolute() ? p : base / p;
    };

    PipelineConfig cfg;
    std::map<std::string, std::string> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            raise(Errc::ConfigError, "config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (!pairs.emplace(key, value).second)
            raise(Errc::ConfigError, "config key '" + key + "' repeated");
    }

    for (const auto& [key, value] : pairs) {
        if (key == "records") cfg.records = resolve_path(value);
        else if (key == "registry") cfg.registry = resolve_path(value);
        else if (key == "aliases") cfg.aliases = resolve_path(value);
        else if (key == "gazetteer") cfg.gazetteer = resolve_path(value);
        else if (key == "out") cfg.out = resolve_path(value);
        else if (key == "threshold") cfg.threshold = detail::parse_unit_interval(value, key, false);
        else if (key == "damping") cfg.damping = detail::parse_unit_interval(value, key, true);
        else if (key == "edge_weight_mode") {
            if (value == "pairs") cfg.edge_weight_mode = EdgeWeightMode::Pairs;
            else if (value == "papers") cfg.edge_weight_mode = EdgeWeightMode::Papers;
            else raise(Errc::ConfigError, "edge_weight_mode must be pairs or papers");
        } else if (key == "snapshot_years") cfg.snapshot_years = detail::parse_year_list(value);
        else if (key == "years") {
            auto years = detail::parse_year_list(value);
            if (years.empty()) raise(Errc::ConfigError, "years is empty");
            cfg.year_range = {years.front(), years.back()};
        } else if (key == "top") {
            try {
                cfg.top_k = std::stoi(value);
            } catch (const std::exception&) {
                raise(Errc::ConfigError, "top '" + value + "' is not an integer");
            }
            if (cfg.top_k < 1) raise(Errc::ConfigError, "top must be >= 1");
        } else if (key == "category") cfg.category_filter = value;
        else raise(Errc::ConfigError, "unknown config key '" + key + "'");
    }

    if (cfg.records.empty()) raise(Errc::ConfigError, "config missing 'records'");
    if (cfg.registry.empty()) raise(Errc::ConfigError, "config missing 'registry'");
    return cfg;
}

/// Stable text form of the effective configuration; its digest goes in
/// the run manifest.
inline std::string canonical_config_text(const PipelineConfig& cfg) {
    std::string text;
    auto add = [&text](const std::string& key, const std::string& value) {
        text += key;
        text += " = ";
        text += value;
        text += '\n';
    };
    add("records", cfg.records.string());
    add("registry", cfg.registry.string());
    add("aliases", cfg.aliases ? cfg.aliases->string() : "");
    add("gazetteer", cfg.gazetteer ? cfg.gazetteer->string() : "");
    add("out", cfg.out.string());
    add("threshold", format_double(cfg.threshold));
    add("damping", format_double(cfg.damping));
    add("edge_weight_mode", cfg.edge_weight_mode == EdgeWeightMode::Pairs ? "pairs" : "papers");
    std::string years;
    for (int y : cfg.snapshot_years) years += (years.empty() ? "" : ",") + std::to_string(y);
    add("snapshot_years", years);
    add("years", cfg.year_range ? std::to_string(cfg.year_range->first) + ".." +
                                      std::to_string(cfg.year_range->second)
                                : "");
    add("top", std::to_string(cfg.top_k));
    add("category", cfg.category_filter.value_or(""));
    return text;
}

}  // namespace scholnet
