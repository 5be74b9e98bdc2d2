#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scholnet/category.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/geo.hpp"

namespace scholnet {

struct NodeData {
    CategoryCode category = CategoryCode::Unclassified;
    std::optional<GeoPoint> location;
    std::int64_t paper_count = 0;
};

/// Weighted graph over string node ids. Undirected graphs store each
/// unordered pair once (normalized by node index) and answer weight
/// queries symmetrically. Self-loops are allowed; weights are strictly
/// positive and accumulate on repeated insertion.
class WeightedGraph {
public:
    explicit WeightedGraph(bool directed = false) : directed_(directed) {}

    bool directed() const { return directed_; }

    std::size_t add_node(const std::string& id) {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        std::size_t idx = ids_.size();
        index_.emplace(id, idx);
        ids_.push_back(id);
        attrs_.emplace_back();
        return idx;
    }

    bool has_node(const std::string& id) const { return index_.count(id) != 0; }

    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) raise(Errc::Internal, "unknown node '" + id + "'");
        return it->second;
    }

    const std::string& id_of(std::size_t idx) const { return ids_[idx]; }
    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    NodeData& node(std::size_t idx) { return attrs_[idx]; }
    const NodeData& node(std::size_t idx) const { return attrs_[idx]; }
    NodeData& node(const std::string& id) { return attrs_[index_of(id)]; }
    const NodeData& node(const std::string& id) const { return attrs_[index_of(id)]; }

    void add_edge(const std::string& u, const std::string& v, double w) {
        if (w <= 0.0) raise(Errc::Internal, "non-positive edge weight");
        auto key = edge_key(add_node(u), add_node(v));
        edges_[key] += w;
    }

    double weight(const std::string& u, const std::string& v) const {
        auto iu = index_.find(u);
        auto iv = index_.find(v);
        if (iu == index_.end() || iv == index_.end()) return 0.0;
        auto it = edges_.find(edge_key(iu->second, iv->second));
        return it == edges_.end() ? 0.0 : it->second;
    }

    /// Edge map keyed by node-index pair; for undirected graphs the key
    /// is (min, max). Iteration order is deterministic.
    const std::map<std::pair<std::size_t, std::size_t>, double>& edges() const { return edges_; }

    double total_weight() const {
        double total = 0.0;
        for (const auto& [key, w] : edges_) total += w;
        return total;
    }

    /// Node indices ordered by id; the basis for all deterministic output.
    std::vector<std::size_t> nodes_by_id() const {
        std::vector<std::size_t> order(ids_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [this](std::size_t a, std::size_t b) { return ids_[a] < ids_[b]; });
        return order;
    }

    /// Undirected binarized adjacency with self-loops dropped; neighbor
    /// lists are sorted. This is the view the classic centralities use.
    std::vector<std::vector<std::size_t>> simple_adjacency() const {
        std::vector<std::vector<std::size_t>> adj(ids_.size());
        for (const auto& [key, w] : edges_) {
            auto [u, v] = key;
            if (u == v) continue;
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        return adj;
    }

    /// Directed binarized out-adjacency (self-loops dropped). For
    /// undirected graphs every edge counts both ways.
    std::vector<std::vector<std::size_t>> out_adjacency() const {
        std::vector<std::vector<std::size_t>> adj(ids_.size());
        for (const auto& [key, w] : edges_) {
            auto [u, v] = key;
            if (u == v) continue;
            adj[u].push_back(v);
            if (!directed_) adj[v].push_back(u);
        }
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        return adj;
    }

private:
    std::pair<std::size_t, std::size_t> edge_key(std::size_t u, std::size_t v) const {
        if (!directed_ && u > v) std::swap(u, v);
        return {u, v};
    }

    bool directed_;
    std::vector<std::string> ids_;
    std::vector<NodeData> attrs_;
    std::map<std::string, std::size_t> index_;
    std::map<std::pair<std::size_t, std::size_t>, double> edges_;
};

}  // namespace scholnet
