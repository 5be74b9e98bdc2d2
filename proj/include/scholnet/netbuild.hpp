#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scholnet/graph.hpp"
#include "scholnet/paper_index.hpp"
#include "scholnet/record.hpp"
#include "scholnet/resolve.hpp"

namespace scholnet {

/// Pairs: an edge accumulates n_i * n_j co-author pairs per paper.
/// Papers: an edge accumulates 1 per paper with both endpoints present.
enum class EdgeWeightMode { Pairs, Papers };

enum class NetworkKind { Collaboration, Citation };

using SnapshotSeries = std::vector<std::pair<int, WeightedGraph>>;

namespace detail {

inline void apply_node_attributes(WeightedGraph& g, const PaperIndex& index,
                                  const Registry& registry) {
    for (const auto& inst : index.institutions()) {
        std::size_t idx = g.add_node(inst);
        NodeData& data = g.node(idx);
        data.category = assign_category(inst, registry);
        if (const Institution* entry = registry.find(inst)) data.location = locate(*entry);
        data.paper_count = index.paper_count(inst);
    }
}

}  // namespace detail

/// Undirected institute collaboration network. With n_i authors of a
/// paper at institution i, each unordered pair (i, j) gains n_i * n_j
/// and each institution with n_i >= 2 gains a n_i*(n_i-1)/2 self-loop
/// (or 1 per paper in Papers mode). Every corpus institution becomes a
/// node even when it never co-authors.
inline WeightedGraph build_collaboration_network(const PaperIndex& index, const Registry& registry,
                                                 EdgeWeightMode mode = EdgeWeightMode::Pairs) {
    WeightedGraph g(/*directed=*/false);
    detail::apply_node_attributes(g, index, registry);
    for (const auto& paper : index.papers()) {
        const auto& insts = paper.institutions;
        for (std::size_t a = 0; a < insts.size(); ++a) {
            std::int64_t n_a = insts[a].second;
            if (n_a >= 2) {
                double w = mode == EdgeWeightMode::Pairs ? double(n_a * (n_a - 1) / 2) : 1.0;
                g.add_edge(insts[a].first, insts[a].first, w);
            }
            for (std::size_t b = a + 1; b < insts.size(); ++b) {
                double w = mode == EdgeWeightMode::Pairs ? double(n_a * insts[b].second) : 1.0;
                g.add_edge(insts[a].first, insts[b].first, w);
            }
        }
    }
    return g;
}

inline WeightedGraph build_collaboration_network(const std::vector<PublicationRecord>& records,
                                                 const ResolutionMap& resolution,
                                                 const Registry& registry,
                                                 EdgeWeightMode mode = EdgeWeightMode::Pairs) {
    return build_collaboration_network(PaperIndex::build(records, resolution), registry, mode);
}

/// Directed institute citation network: one unit of weight per
/// (citing paper, cited paper, source institution, target institution)
/// tuple, never multiplied by author counts. Citations leaving the
/// corpus contribute nothing (tallied in the index).
inline WeightedGraph build_citation_network(const PaperIndex& index, const Registry& registry) {
    WeightedGraph g(/*directed=*/true);
    detail::apply_node_attributes(g, index, registry);
    for (const auto& paper : index.papers()) {
        for (const auto& cited_id : paper.cited_in_corpus) {
            const PaperIndex::Paper* cited = index.find(cited_id);
            for (const auto& [src, n_src] : paper.institutions)
                for (const auto& [dst, n_dst] : cited->institutions)
                    g.add_edge(src, dst, 1.0);
        }
    }
    return g;
}

inline WeightedGraph build_citation_network(const std::vector<PublicationRecord>& records,
                                            const ResolutionMap& resolution,
                                            const Registry& registry) {
    return build_citation_network(PaperIndex::build(records, resolution), registry);
}

/// Clubs same-category institutions into one super node. Edge weight
/// between categories is the sum of member edge weights crossing them;
/// within-category weight (member self-loops included) lands on the
/// category self-loop, so total edge weight is conserved. Pass the
/// index to get exact distinct-paper counts per category; without it
/// member paper counts are summed, which double-counts papers spanning
/// two institutions of one category.
inline WeightedGraph aggregate_supernodes(const WeightedGraph& g,
                                          const std::map<std::string, CategoryCode>& categories,
                                          const PaperIndex* index = nullptr) {
    WeightedGraph super(g.directed());
    auto category_of = [&](std::size_t idx) -> CategoryCode {
        auto it = categories.find(g.id_of(idx));
        if (it == categories.end())
            raise(Errc::InvalidInput, "uncategorized node '" + g.id_of(idx) + "'");
        return it->second;
    };

    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        CategoryCode c = category_of(idx);
        std::size_t s = super.add_node(std::string(to_string(c)));
        super.node(s).category = c;
        if (!index) super.node(s).paper_count += g.node(idx).paper_count;
    }
    if (index) {
        auto counts = index->category_paper_counts(categories);
        for (const auto& [c, n] : counts) {
            std::size_t s = super.add_node(std::string(to_string(c)));
            super.node(s).category = c;
            super.node(s).paper_count = n;
        }
    }

    for (const auto& [key, w] : g.edges()) {
        auto [u, v] = key;
        super.add_edge(std::string(to_string(category_of(u))),
                       std::string(to_string(category_of(v))), w);
    }
    return super;
}

/// Categories taken from the graph's own node attributes.
inline WeightedGraph aggregate_supernodes(const WeightedGraph& g, const PaperIndex* index = nullptr) {
    std::map<std::string, CategoryCode> categories;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx)
        categories.emplace(g.id_of(idx), g.node(idx).category);
    return aggregate_supernodes(g, categories, index);
}

/// Cumulative yearly snapshots: the graph at year t covers every record
/// with year <= t, citations included only once the citing paper exists.
inline SnapshotSeries cumulative_snapshots(const std::vector<PublicationRecord>& records,
                                           const ResolutionMap& resolution,
                                           const Registry& registry, NetworkKind kind,
                                           std::vector<int> years,
                                           EdgeWeightMode mode = EdgeWeightMode::Pairs) {
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());

    SnapshotSeries series;
    for (int year : years) {
        std::vector<PublicationRecord> upto;
        for (const auto& rec : records)
            if (rec.year <= year) upto.push_back(rec);
        PaperIndex index = PaperIndex::build(upto, resolution);
        WeightedGraph g = kind == NetworkKind::Collaboration
                              ? build_collaboration_network(index, registry, mode)
                              : build_citation_network(index, registry);
        series.emplace_back(year, std::move(g));
    }
    return series;
}

}  // namespace scholnet
