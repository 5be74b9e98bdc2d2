// scholnet: institution-level collaboration and citation network toolkit.
//
// Subcommands run one pipeline stage each against a shared config file;
// command-line flags override config values. Every run writes a manifest
// listing the config hash, input digests and produced files.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scholnet/config.hpp"
#include "scholnet/pipeline.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::optional<double> threshold;
    std::optional<std::string> years;
    std::optional<std::string> category;
    std::optional<int> top;
    std::optional<std::string> out;
};

void apply_overrides(scholnet::PipelineConfig& cfg, const Overrides& o) {
    if (o.threshold) {
        if (*o.threshold < 0.0 || *o.threshold > 1.0)
            scholnet::raise(scholnet::Errc::ConfigError, "threshold out of range");
        cfg.threshold = *o.threshold;
    }
    if (o.years) {
        auto years = scholnet::detail::parse_year_list(*o.years);
        if (years.empty()) scholnet::raise(scholnet::Errc::ConfigError, "empty --years");
        cfg.year_range = {years.front(), years.back()};
        if (cfg.snapshot_years.empty()) cfg.snapshot_years = years;
    }
    if (o.category) cfg.category_filter = *o.category;
    if (o.top) {
        if (*o.top < 1) scholnet::raise(scholnet::Errc::ConfigError, "--top must be >= 1");
        cfg.top_k = *o.top;
    }
    if (o.out) cfg.out = *o.out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Institution collaboration and citation network toolkit"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string subcommand;
    for (const auto& name : {"resolve", "build", "metrics", "distance", "hubs", "countries"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", overrides.config_path, "pipeline config file")->required();
        sub->add_option("--threshold", overrides.threshold, "resolution distance threshold");
        sub->add_option("--years", overrides.years, "year range Y1..Y2 or comma list");
        sub->add_option("--category", overrides.category, "category filter Y or Y,X (X may be ALL)");
        sub->add_option("--top", overrides.top, "number of hubs to report");
        sub->add_option("--out", overrides.out, "output directory");
        sub->callback([&subcommand, name] { subcommand = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        scholnet::PipelineConfig cfg = scholnet::load_config(overrides.config_path);
        apply_overrides(cfg, overrides);
        scholnet::run_subcommand(subcommand, cfg);
    } catch (const scholnet::Error& e) {
        std::fprintf(stderr, "scholnet: error %s\n", e.what());
        return scholnet::exit_code(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "scholnet: error internal: %s\n", e.what());
        return 4;
    }
    return 0;
}
