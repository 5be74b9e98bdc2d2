#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scholnet/config.hpp"
#include "scholnet/io.hpp"
#include "scholnet/metrics.hpp"
#include "scholnet/netbuild.hpp"
#include "scholnet/paper_index.hpp"
#include "scholnet/record.hpp"
#include "scholnet/resolve.hpp"

namespace scholnet {

/// Exclusive ownership of the output directory for the duration of a run.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& out_dir) {
        std::filesystem::create_directories(out_dir);
        path_ = out_dir / ".scholnet.lock";
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            raise(Errc::OutputLocked, "output directory " + out_dir.string() +
                                          " is locked (remove " + path_.string() +
                                          " if no other run is active)");
    }
    ~OutputLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path path_;
    int fd_ = -1;
};

/// Accumulates the run manifest: config hash, input digests, and every
/// file the run wrote. Nothing leaves the run undeclared.
class Manifest {
public:
    Manifest(std::string subcommand, const PipelineConfig& cfg)
        : subcommand_(std::move(subcommand)), out_dir_(cfg.out) {
        config_hash_ = "fnv1a64:" + hex64(fnv1a64(canonical_config_text(cfg)));
        add_input(cfg.records);
        add_input(cfg.registry);
        if (cfg.aliases) add_input(*cfg.aliases);
        if (cfg.gazetteer) add_input(*cfg.gazetteer);
    }

    void add_input(const std::filesystem::path& path) {
        inputs_[path.filename().string()] = digest_file(path);
    }

    std::filesystem::path declare(const std::string& name) {
        outputs_.push_back(name);
        return out_dir_ / name;
    }

    void write() {
        nlohmann::json j;
        j["subcommand"] = subcommand_;
        j["config_hash"] = config_hash_;
        j["inputs"] = inputs_;
        std::sort(outputs_.begin(), outputs_.end());
        j["outputs"] = outputs_;
        std::ofstream out(out_dir_ / ("manifest_" + subcommand_ + ".json"), std::ios::binary);
        if (!out) raise(Errc::IoError, "cannot write manifest");
        out << j.dump(2) << '\n';
    }

private:
    std::string subcommand_;
    std::filesystem::path out_dir_;
    std::string config_hash_;
    std::map<std::string, std::string> inputs_;
    std::vector<std::string> outputs_;
};

/// Everything the downstream stages need, resolved once.
struct LoadedCorpus {
    std::vector<PublicationRecord> records;
    Registry registry;  // input registry extended with fresh entries
    ResolutionMap resolution;
    PaperIndex index;
    std::int64_t created_foreign = 0;
    std::int64_t created_unclassified = 0;
    std::int64_t distinct_raws = 0;
};

inline std::vector<std::string> collect_raw_affiliations(
    const std::vector<PublicationRecord>& records) {
    std::vector<std::string> raws;
    std::set<std::string> seen;
    for (const auto& rec : records)
        for (const auto& author : rec.authorships)
            for (const auto& raw : author.raw_affiliations)
                if (seen.insert(raw).second) raws.push_back(raw);
    return raws;
}

inline LoadedCorpus load_corpus(const PipelineConfig& cfg) {
    LoadedCorpus corpus;
    corpus.records = parse_records_file(cfg.records);
    if (cfg.year_range) {
        std::erase_if(corpus.records, [&](const PublicationRecord& rec) {
            return rec.year < cfg.year_range->first || rec.year > cfg.year_range->second;
        });
    }
    Registry registry = load_registry(cfg.registry);
    std::map<std::string, std::string> aliases;
    if (cfg.aliases) aliases = load_aliases(*cfg.aliases);
    std::vector<std::string> gazetteer;
    if (cfg.gazetteer) gazetteer = load_gazetteer(*cfg.gazetteer);

    auto raws = collect_raw_affiliations(corpus.records);
    corpus.distinct_raws = std::int64_t(raws.size());
    ResolveParams params;
    params.threshold = cfg.threshold;
    ResolveResult resolved = resolve_affiliations(raws, registry, aliases, gazetteer, params);
    corpus.registry = std::move(resolved.registry);
    corpus.resolution = std::move(resolved.map);
    corpus.created_foreign = resolved.created_foreign;
    corpus.created_unclassified = resolved.created_unclassified;
    corpus.index = PaperIndex::build(corpus.records, corpus.resolution);
    return corpus;
}

inline std::map<std::string, CategoryCode> corpus_categories(const LoadedCorpus& corpus) {
    std::map<std::string, CategoryCode> categories;
    for (const auto& inst : corpus.index.institutions())
        categories.emplace(inst, assign_category(inst, corpus.registry));
    return categories;
}

inline std::optional<CategoryFilter> parse_category_filter(
    const std::optional<std::string>& spec) {
    if (!spec) return std::nullopt;
    CategoryFilter filter;
    auto parts = split(*spec, ',');
    if (parts.empty() || parts.size() > 2)
        raise(Errc::ConfigError, "category filter must be Y or Y,X");
    auto first = category_from_string(trim(parts[0]));
    if (!first) raise(Errc::ConfigError, "unknown category '" + parts[0] + "'");
    filter.first = *first;
    if (parts.size() == 2 && trim(parts[1]) != "ALL") {
        auto second = category_from_string(trim(parts[1]));
        if (!second) raise(Errc::ConfigError, "unknown category '" + parts[1] + "'");
        filter.second = *second;
    }
    return filter;
}

// ------------------------------------------------------------ subcommands

inline void run_resolve(const PipelineConfig& cfg) {
    OutputLock lock(cfg.out);
    Manifest manifest("resolve", cfg);
    LoadedCorpus corpus = load_corpus(cfg);

    write_resolution_csv(corpus.resolution, manifest.declare("resolution.csv"));

    std::set<std::string> canonical;
    std::map<std::string, std::int64_t> by_provenance;
    for (const auto& [raw, id] : corpus.resolution.entries) {
        canonical.insert(id);
        by_provenance[std::string(provenance_token(corpus.resolution.provenance.at(raw)))] += 1;
    }
    CorpusSummary summary = validate_corpus(corpus.records);

    std::int64_t unlocated = 0;
    for (const auto& id : canonical) {
        const Institution* inst = corpus.registry.find(id);
        if (inst && !inst->is_foreign() && !locate(*inst)) ++unlocated;
    }

    nlohmann::json j;
    j["papers"] = summary.papers;
    j["year_min"] = summary.year_min;
    j["year_max"] = summary.year_max;
    j["raw_affiliations"] = corpus.distinct_raws;
    j["canonical_institutions"] = std::int64_t(canonical.size());
    j["by_provenance"] = by_provenance;
    j["created_foreign"] = corpus.created_foreign;
    j["created_unclassified"] = corpus.created_unclassified;
    j["unlocated_domestic"] = unlocated;
    j["external_citations"] = summary.external_citation_count;
    std::ofstream out(manifest.declare("resolve_summary.json"), std::ios::binary);
    out << j.dump(2) << '\n';

    manifest.write();
}

inline void run_build(const PipelineConfig& cfg) {
    OutputLock lock(cfg.out);
    Manifest manifest("build", cfg);
    LoadedCorpus corpus = load_corpus(cfg);

    WeightedGraph collab =
        build_collaboration_network(corpus.index, corpus.registry, cfg.edge_weight_mode);
    WeightedGraph citation = build_citation_network(corpus.index, corpus.registry);
    WeightedGraph super_collab = aggregate_supernodes(collab, &corpus.index);
    WeightedGraph super_citation = aggregate_supernodes(citation, &corpus.index);

    write_gexf(collab, manifest.declare("collaboration.gexf"), &corpus.registry);
    write_edge_csv(collab, manifest.declare("collaboration_edges.csv"));
    write_gexf(citation, manifest.declare("citation.gexf"), &corpus.registry);
    write_edge_csv(citation, manifest.declare("citation_edges.csv"));
    write_gexf(super_collab, manifest.declare("supernode_collaboration.gexf"));
    write_edge_csv(super_collab, manifest.declare("supernode_collaboration_edges.csv"));
    write_gexf(super_citation, manifest.declare("supernode_citation.gexf"));
    write_edge_csv(super_citation, manifest.declare("supernode_citation_edges.csv"));

    if (!cfg.snapshot_years.empty()) {
        for (auto kind : {NetworkKind::Collaboration, NetworkKind::Citation}) {
            auto series = cumulative_snapshots(corpus.records, corpus.resolution, corpus.registry,
                                               kind, cfg.snapshot_years, cfg.edge_weight_mode);
            const char* stem =
                kind == NetworkKind::Collaboration ? "snapshot_collaboration_" : "snapshot_citation_";
            for (const auto& [year, graph] : series)
                write_edge_csv(graph,
                               manifest.declare(stem + std::to_string(year) + "_edges.csv"));
        }
    }
    manifest.write();
}

inline void run_metrics(const PipelineConfig& cfg) {
    OutputLock lock(cfg.out);
    Manifest manifest("metrics", cfg);
    LoadedCorpus corpus = load_corpus(cfg);
    auto categories = corpus_categories(corpus);

    WeightedGraph collab =
        build_collaboration_network(corpus.index, corpus.registry, cfg.edge_weight_mode);
    WeightedGraph citation = build_citation_network(corpus.index, corpus.registry);

    NodeMetrics metrics = compute_node_metrics(collab, cfg.damping);
    if (!metrics.pagerank.converged)
        std::fprintf(stderr, "scholnet: note: pagerank stopped after %d iterations without meeting tolerance\n",
                     metrics.pagerank.iterations);
    write_metrics_csv(metrics, manifest.declare("metrics.csv"));
    write_flow_csv(knowledge_flow(citation), manifest.declare("flow.csv"));

    auto table = productivity_table(corpus.index, categories);
    write_category_table_csv(table, manifest.declare("category_table.csv"));
    auto order = productivity_order(table);
    write_category_matrix_csv(aggregate_supernodes(collab, categories, &corpus.index), order,
                              manifest.declare("category_matrix.csv"));
    write_category_matrix_csv(aggregate_supernodes(citation, categories, &corpus.index), order,
                              manifest.declare("category_matrix_citation.csv"));
    write_category_centrality_csv(category_centrality_summary(metrics, categories),
                                  manifest.declare("category_centrality.csv"));
    manifest.write();
}

inline void run_distance(const PipelineConfig& cfg) {
    OutputLock lock(cfg.out);
    Manifest manifest("distance", cfg);
    LoadedCorpus corpus = load_corpus(cfg);

    WeightedGraph collab =
        build_collaboration_network(corpus.index, corpus.registry, cfg.edge_weight_mode);
    auto filter = parse_category_filter(cfg.category_filter);
    DistanceProfile profile = distance_profile(collab, corpus.index, filter);

    std::string name = "distance_profile";
    if (filter) {
        name += "_" + std::string(to_string(filter->first));
        name += "_" + (filter->second ? std::string(to_string(*filter->second)) : std::string("ALL"));
    }
    write_distance_profile_csv(profile, manifest.declare(name + ".csv"));
    manifest.write();
}

inline void run_hubs(const PipelineConfig& cfg) {
    OutputLock lock(cfg.out);
    Manifest manifest("hubs", cfg);
    LoadedCorpus corpus = load_corpus(cfg);
    WeightedGraph citation = build_citation_network(corpus.index, corpus.registry);
    auto hubs = top_knowledge_hubs(citation, std::size_t(cfg.top_k));
    write_hubs_csv(hubs, manifest.declare("hubs.csv"));
    manifest.write();
}

inline void run_countries(const PipelineConfig& cfg) {
    OutputLock lock(cfg.out);
    Manifest manifest("countries", cfg);
    LoadedCorpus corpus = load_corpus(cfg);
    WeightedGraph collab =
        build_collaboration_network(corpus.index, corpus.registry, cfg.edge_weight_mode);
    write_countries_csv(country_collaboration(collab, &corpus.registry),
                        manifest.declare("countries.csv"));
    manifest.write();
}

inline void run_subcommand(const std::string& name, const PipelineConfig& cfg) {
    if (name == "resolve") run_resolve(cfg);
    else if (name == "build") run_build(cfg);
    else if (name == "metrics") run_metrics(cfg);
    else if (name == "distance") run_distance(cfg);
    else if (name == "hubs") run_hubs(cfg);
    else if (name == "countries") run_countries(cfg);
    else raise(Errc::ConfigError, "unknown subcommand '" + name + "'");
}

}  // namespace scholnet
