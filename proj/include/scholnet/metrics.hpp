#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scholnet/geo.hpp"
#include "scholnet/graph.hpp"
#include "scholnet/paper_index.hpp"

namespace scholnet {

/// N_ij = C_ij / (w_i * w_j): shared papers over the product of the two
/// institutions' paper counts. Symmetric; N_ii = 1 / w_i.
inline double collaboration_strength(const std::string& i, const std::string& j,
                                     const PaperIndex& index) {
    std::int64_t w_i = index.paper_count(i);
    std::int64_t w_j = index.paper_count(j);
    if (w_i == 0) raise(Errc::ZeroProductivity, "'" + i + "'");
    if (w_j == 0) raise(Errc::ZeroProductivity, "'" + j + "'");
    return double(index.common_papers(i, j)) / (double(w_i) * double(w_j));
}

struct FlowScore {
    std::string node;
    double f_out = 0.0;  // k_in * w_in / (w_in + w_out); being cited
    double f_in = 0.0;   // -k_out * w_out / (w_in + w_out); citing others
    std::int64_t k_in = 0;
    std::int64_t k_out = 0;
    double w_in = 0.0;
    double w_out = 0.0;
};

/// Knowledge flow per node of the citation network. Self-loops count
/// toward neither degrees nor weight sums. Isolated nodes score zero.
inline std::vector<FlowScore> knowledge_flow(const WeightedGraph& citation) {
    if (!citation.directed()) raise(Errc::InvalidInput, "knowledge flow needs a directed graph");
    std::vector<FlowScore> scores(citation.node_count());
    for (std::size_t idx = 0; idx < citation.node_count(); ++idx)
        scores[idx].node = citation.id_of(idx);
    for (const auto& [key, w] : citation.edges()) {
        auto [u, v] = key;
        if (u == v) continue;
        scores[u].k_out += 1;
        scores[u].w_out += w;
        scores[v].k_in += 1;
        scores[v].w_in += w;
    }
    for (auto& s : scores) {
        double total = s.w_in + s.w_out;
        if (total > 0.0) {
            s.f_out = double(s.k_in) * s.w_in / total;
            double outflow = double(s.k_out) * s.w_out / total;
            s.f_in = outflow == 0.0 ? 0.0 : -outflow;
        }
    }
    std::sort(scores.begin(), scores.end(),
              [](const FlowScore& a, const FlowScore& b) { return a.node < b.node; });
    return scores;
}

/// Unnormalized shortest-path betweenness, Brandes' accumulation over the
/// unweighted undirected view; each unordered pair counts once. The
/// accumulator type is a template parameter so the algorithm can run in
/// exact arithmetic where floating point would round (path-count ratios
/// like 1/3 are not representable).
template <class Acc = double>
std::map<std::string, Acc> betweenness_all(const WeightedGraph& g) {
    auto adj = g.simple_adjacency();
    std::size_t n = g.node_count();
    std::vector<Acc> score(n, Acc(0));

    std::vector<std::uint64_t> sigma(n);
    std::vector<long> dist(n);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> order;
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        for (auto& p : preds) p.clear();
        order.clear();

        sigma[s] = 1;
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (std::size_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }

        std::vector<Acc> delta(n, Acc(0));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : preds[w])
                delta[v] += (Acc(sigma[v]) / Acc(sigma[w])) * (Acc(1) + delta[w]);
            if (w != s) score[w] += delta[w];
        }
    }

    std::map<std::string, Acc> out;
    for (std::size_t idx = 0; idx < n; ++idx)
        out.emplace(g.id_of(idx), score[idx] / Acc(2));  // ordered pairs counted twice
    return out;
}

struct PageRankResult {
    std::map<std::string, double> scores;
    bool converged = false;
    int iterations = 0;
};

/// Power iteration with uniform teleport and uniform dangling-mass
/// redistribution, on the binarized view (undirected edges act both
/// ways, self-loops dropped). Reports non-convergence instead of
/// throwing and returns the last iterate either way.
inline PageRankResult pagerank(const WeightedGraph& g, double damping = 0.85, double tol = 1e-10,
                               int max_iter = 200) {
    std::size_t n = g.node_count();
    if (n == 0) raise(Errc::EmptyGraph, "pagerank of empty graph");
    auto out = g.out_adjacency();

    std::vector<double> x(n, 1.0 / double(n)), next(n);
    PageRankResult result;
    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (out[v].empty()) dangling += x[v];
        double base = (1.0 - damping) / double(n) + damping * dangling / double(n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t v = 0; v < n; ++v) {
            if (out[v].empty()) continue;
            double share = damping * x[v] / double(out[v].size());
            for (std::size_t w : out[v]) next[w] += share;
        }
        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - x[v]);
        x.swap(next);
        result.iterations = iter;
        if (change < tol) {
            result.converged = true;
            break;
        }
    }
    for (std::size_t idx = 0; idx < n; ++idx) result.scores.emplace(g.id_of(idx), x[idx]);
    return result;
}

/// Triangles over possible neighbor pairs, on the simple undirected view.
inline std::map<std::string, double> local_clustering(const WeightedGraph& g) {
    auto adj = g.simple_adjacency();
    std::map<std::string, double> out;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        std::size_t k = adj[v].size();
        if (k < 2) {
            out.emplace(g.id_of(v), 0.0);
            continue;
        }
        std::size_t links = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (std::binary_search(adj[adj[v][i]].begin(), adj[adj[v][i]].end(), adj[v][j]))
                    ++links;
        out.emplace(g.id_of(v), 2.0 * double(links) / (double(k) * double(k - 1)));
    }
    return out;
}

/// Degree on the simple view (distinct neighbors, self-loops excluded).
inline std::map<std::string, std::int64_t> degree_all(const WeightedGraph& g) {
    auto adj = g.simple_adjacency();
    std::map<std::string, std::int64_t> out;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        out.emplace(g.id_of(v), std::int64_t(adj[v].size()));
    return out;
}

struct NodeMetrics {
    std::map<std::string, std::int64_t> degree;
    std::map<std::string, double> clustering;
    std::map<std::string, double> betweenness;
    PageRankResult pagerank;
};

inline NodeMetrics compute_node_metrics(const WeightedGraph& g, double damping = 0.85,
                                        double tol = 1e-10, int max_iter = 200) {
    NodeMetrics m;
    m.degree = degree_all(g);
    m.clustering = local_clustering(g);
    m.betweenness = betweenness_all(g);
    m.pagerank = pagerank(g, damping, tol, max_iter);
    return m;
}

struct CategoryCentrality {
    std::int64_t members = 0;
    double avg_degree = 0.0;
    double avg_clustering = 0.0;
    double avg_betweenness = 0.0;
    double avg_pagerank = 0.0;
};

/// Arithmetic mean of each measure over a category's member institutions.
/// Categories without members simply do not appear.
inline std::map<CategoryCode, CategoryCentrality> category_centrality_summary(
    const NodeMetrics& metrics, const std::map<std::string, CategoryCode>& categories) {
    std::map<CategoryCode, CategoryCentrality> out;
    for (const auto& [node, degree] : metrics.degree) {
        auto it = categories.find(node);
        if (it == categories.end()) continue;
        CategoryCentrality& c = out[it->second];
        c.members += 1;
        c.avg_degree += double(degree);
        c.avg_clustering += metrics.clustering.at(node);
        c.avg_betweenness += metrics.betweenness.at(node);
        c.avg_pagerank += metrics.pagerank.scores.at(node);
    }
    for (auto& [code, c] : out) {
        c.avg_degree /= double(c.members);
        c.avg_clustering /= double(c.members);
        c.avg_betweenness /= double(c.members);
        c.avg_pagerank /= double(c.members);
    }
    return out;
}

inline std::map<CategoryCode, CategoryCentrality> category_centrality_summary(
    const WeightedGraph& g, const std::map<std::string, CategoryCode>& categories) {
    return category_centrality_summary(compute_node_metrics(g), categories);
}

/// Largest weakly connected component, as sorted node ids. Size ties go
/// to the lexicographically smallest id set.
inline std::vector<std::string> giant_connected_component(const WeightedGraph& g) {
    if (g.node_count() == 0) raise(Errc::EmptyGraph, "no nodes");
    auto adj = g.simple_adjacency();
    std::vector<bool> seen(g.node_count(), false);
    std::vector<std::string> best;
    for (std::size_t s = 0; s < g.node_count(); ++s) {
        if (seen[s]) continue;
        std::vector<std::string> component;
        std::deque<std::size_t> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            component.push_back(g.id_of(v));
            for (std::size_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
        }
        std::sort(component.begin(), component.end());
        if (component.size() > best.size() ||
            (component.size() == best.size() && component < best))
            best = std::move(component);
    }
    return best;
}

/// GCC nodes ranked by weighted in-degree (self-loops excluded),
/// descending; ties broken by node id.
inline std::vector<std::pair<std::string, double>> top_knowledge_hubs(const WeightedGraph& citation,
                                                                      std::size_t k) {
    if (!citation.directed()) raise(Errc::InvalidInput, "knowledge hubs need a directed graph");
    auto gcc = giant_connected_component(citation);
    std::set<std::string> in_gcc(gcc.begin(), gcc.end());

    std::map<std::string, double> weighted_in;
    for (const auto& id : gcc) weighted_in.emplace(id, 0.0);
    for (const auto& [key, w] : citation.edges()) {
        auto [u, v] = key;
        if (u == v) continue;
        const std::string& target = citation.id_of(v);
        if (in_gcc.count(target)) weighted_in[target] += w;
    }

    std::vector<std::pair<std::string, double>> ranking(weighted_in.begin(), weighted_in.end());
    std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranking.size() > k) ranking.resize(k);
    return ranking;
}

struct DistanceBinStats {
    int bin = 0;
    double lo_km = 0.0;
    double hi_km = 0.0;
    std::int64_t pair_count = 0;
    double event_weight = 0.0;  // summed collaboration weights
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

struct DistanceProfile {
    std::vector<DistanceBinStats> bins;  // non-empty bins, ascending
    std::int64_t included_pairs = 0;
    std::int64_t excluded_unlocated = 0;
};

/// (Y, nothing) keeps pairs with >=1 endpoint of category Y ("Y-X" in the
/// category-vs-all reading); (Y, X) keeps exactly that category pair.
struct CategoryFilter {
    CategoryCode first = CategoryCode::NRI;
    std::optional<CategoryCode> second;  // nullopt = ALL
};

/// Linear-interpolation quantile on a sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    double h = (double(sorted.size()) - 1.0) * p;
    std::size_t lo = std::size_t(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - double(lo)) * (sorted[lo + 1] - sorted[lo]);
}

/// Distance profile of collaborating pairs (graph edges, self-loops
/// included at distance zero). Pairs missing coordinates on either side
/// are excluded and tallied; everything else lands in its 50 km bin
/// with N_ij statistics computed per bin.
inline DistanceProfile distance_profile(const WeightedGraph& collab, const PaperIndex& index,
                                        const std::optional<CategoryFilter>& filter = std::nullopt) {
    std::map<int, std::vector<double>> values;
    std::map<int, std::int64_t> counts;
    std::map<int, double> weights;
    DistanceProfile profile;

    for (const auto& [key, w] : collab.edges()) {
        auto [u, v] = key;
        const NodeData& nu = collab.node(u);
        const NodeData& nv = collab.node(v);

        if (filter) {
            if (filter->second) {
                CategoryCode a = filter->first, b = *filter->second;
                bool match = (nu.category == a && nv.category == b) ||
                             (nu.category == b && nv.category == a);
                if (!match) continue;
            } else if (nu.category != filter->first && nv.category != filter->first) {
                continue;
            }
        }

        if (!nu.location || !nv.location) {
            ++profile.excluded_unlocated;
            continue;
        }
        double d = u == v ? 0.0 : great_circle_distance(*nu.location, *nv.location);
        int bin = distance_bin(d);
        values[bin].push_back(collaboration_strength(collab.id_of(u), collab.id_of(v), index));
        counts[bin] += 1;
        weights[bin] += w;
        ++profile.included_pairs;
    }

    if (profile.included_pairs == 0) raise(Errc::NoLocatedPairs, "no located collaborating pairs");

    for (auto& [bin, sample] : values) {
        std::sort(sample.begin(), sample.end());
        DistanceBinStats stats;
        stats.bin = bin;
        stats.lo_km = bin_lower_km(bin);
        stats.hi_km = bin_upper_km(bin);
        stats.pair_count = counts[bin];
        stats.event_weight = weights[bin];
        double sum = 0.0;
        for (double x : sample) sum += x;
        stats.mean = sum / double(sample.size());
        stats.median = quantile_sorted(sample, 0.5);
        stats.q1 = quantile_sorted(sample, 0.25);
        stats.q3 = quantile_sorted(sample, 0.75);
        profile.bins.push_back(stats);
    }
    return profile;
}

struct CategoryTableRow {
    std::int64_t papers = 0;
    std::int64_t institutions = 0;
    double papers_per_institute = 0.0;
};

/// Papers, institutions and papers-per-institute by category. A paper
/// counts toward every category among its institutions.
inline std::map<CategoryCode, CategoryTableRow> productivity_table(
    const PaperIndex& index, const std::map<std::string, CategoryCode>& categories) {
    std::map<CategoryCode, CategoryTableRow> table;
    for (const auto& inst : index.institutions()) {
        auto it = categories.find(inst);
        if (it == categories.end()) continue;
        table[it->second].institutions += 1;
    }
    for (const auto& [code, papers] : index.category_paper_counts(categories))
        table[code].papers = papers;
    for (auto& [code, row] : table)
        if (row.institutions > 0)
            row.papers_per_institute = double(row.papers) / double(row.institutions);
    return table;
}

/// Row/column order for category matrices: descending productivity,
/// category code breaking ties.
inline std::vector<CategoryCode> productivity_order(
    const std::map<CategoryCode, CategoryTableRow>& table) {
    std::vector<CategoryCode> order;
    for (const auto& [code, row] : table) order.push_back(code);
    std::sort(order.begin(), order.end(), [&](CategoryCode a, CategoryCode b) {
        double pa = table.at(a).papers_per_institute;
        double pb = table.at(b).papers_per_institute;
        if (pa != pb) return pa > pb;
        return to_string(a) < to_string(b);
    });
    return order;
}

}  // namespace scholnet
