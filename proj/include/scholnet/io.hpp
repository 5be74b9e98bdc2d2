#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scholnet/graph.hpp"
#include "scholnet/metrics.hpp"
#include "scholnet/resolve.hpp"
#include "scholnet/util.hpp"

namespace scholnet {

// ---------------------------------------------------------------- loading

/// Registry CSV: canonical_id,display_name,category,pincode,lat,lon
/// Pincode and coordinates may be blank (foreign rows always leave them
/// blank); display names may be quoted.
inline Registry load_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open registry " + path.string());
    Registry registry;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_view(line).empty()) continue;
        auto fields = csv_parse_line(line, line_no, "registry");
        if (line_no == 1) {
            if (fields != std::vector<std::string>{"canonical_id", "display_name", "category",
                                                   "pincode", "lat", "lon"})
                raise(Errc::InvalidInput, "registry " + path.string() + ": unexpected header");
            continue;
        }
        if (fields.size() != 6)
            raise(Errc::InvalidInput, "registry line " + std::to_string(line_no) +
                                          ": expected 6 fields, got " + std::to_string(fields.size()));
        Institution inst;
        inst.canonical_id = trim(fields[0]);
        inst.display_name = trim(fields[1]);
        if (inst.canonical_id.empty() || inst.display_name.empty())
            raise(Errc::InvalidInput, "registry line " + std::to_string(line_no) + ": empty id or name");
        auto category = category_from_string(trim(fields[2]));
        if (!category)
            raise(Errc::InvalidInput,
                  "registry line " + std::to_string(line_no) + ": unknown category '" + fields[2] + "'");
        inst.category = *category;
        if (inst.is_foreign()) inst.foreign_country = inst.display_name;
        std::string pincode = trim(fields[3]);
        if (!pincode.empty()) inst.pincode = pincode;
        std::string lat = trim(fields[4]), lon = trim(fields[5]);
        if (lat.empty() != lon.empty())
            raise(Errc::InvalidInput, "registry line " + std::to_string(line_no) +
                                          ": lat and lon must both be set or both blank");
        if (!lat.empty()) {
            try {
                inst.location = GeoPoint{std::stod(lat), std::stod(lon)};
            } catch (const std::exception&) {
                raise(Errc::InvalidInput, "registry line " + std::to_string(line_no) + ": bad coordinates");
            }
        }
        registry.add(std::move(inst));
    }
    if (registry.empty()) raise(Errc::InvalidInput, "registry " + path.string() + " is empty");
    return registry;
}

/// Alias CSV: raw_string,canonical_id
inline std::map<std::string, std::string> load_aliases(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open alias file " + path.string());
    std::map<std::string, std::string> aliases;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_view(line).empty()) continue;
        auto fields = csv_parse_line(line, line_no, "aliases");
        if (line_no == 1) {
            if (fields != std::vector<std::string>{"raw_string", "canonical_id"})
                raise(Errc::InvalidInput, "alias file " + path.string() + ": unexpected header");
            continue;
        }
        if (fields.size() != 2)
            raise(Errc::InvalidInput, "alias line " + std::to_string(line_no) + ": expected 2 fields");
        aliases[fields[0]] = trim(fields[1]);
    }
    return aliases;
}

/// One country per line; blank lines and '#' comments skipped.
inline std::vector<std::string> load_gazetteer(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open gazetteer " + path.string());
    std::vector<std::string> countries;
    std::string line;
    while (std::getline(in, line)) {
        std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        countries.push_back(entry);
    }
    return countries;
}

// ---------------------------------------------------------------- writing

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot write " + path.string());
    return out;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct SortedEdge {
    std::string source;
    std::string target;
    double weight;
};

/// Edges with id-ordered endpoints (undirected graphs list the smaller
/// id first), sorted for byte-stable output.
inline std::vector<SortedEdge> sorted_edges(const WeightedGraph& g) {
    std::vector<SortedEdge> out;
    out.reserve(g.edge_count());
    for (const auto& [key, w] : g.edges()) {
        std::string a = g.id_of(key.first), b = g.id_of(key.second);
        if (!g.directed() && b < a) std::swap(a, b);
        out.push_back({std::move(a), std::move(b), w});
    }
    std::sort(out.begin(), out.end(), [](const SortedEdge& x, const SortedEdge& y) {
        if (x.source != y.source) return x.source < y.source;
        return x.target < y.target;
    });
    return out;
}

}  // namespace detail

inline void write_edge_csv(const WeightedGraph& g, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "source,target,weight\n";
    for (const auto& e : detail::sorted_edges(g))
        out << csv_escape(e.source) << ',' << csv_escape(e.target) << ','
            << format_double(e.weight) << '\n';
}

/// GEXF 1.2 with category, lat, lon and paper_count node attributes.
/// Labels come from the registry when one is supplied.
inline void write_gexf(const WeightedGraph& g, const std::filesystem::path& path,
                       const Registry* registry = nullptr) {
    auto out = detail::open_out(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
        << "  <graph mode=\"static\" defaultedgetype=\""
        << (g.directed() ? "directed" : "undirected") << "\">\n"
        << "    <attributes class=\"node\">\n"
        << "      <attribute id=\"0\" title=\"category\" type=\"string\"/>\n"
        << "      <attribute id=\"1\" title=\"lat\" type=\"double\"/>\n"
        << "      <attribute id=\"2\" title=\"lon\" type=\"double\"/>\n"
        << "      <attribute id=\"3\" title=\"paper_count\" type=\"long\"/>\n"
        << "    </attributes>\n"
        << "    <nodes>\n";
    for (std::size_t idx : g.nodes_by_id()) {
        const std::string& id = g.id_of(idx);
        const NodeData& data = g.node(idx);
        std::string label = id;
        if (registry)
            if (const Institution* inst = registry->find(id)) label = inst->display_name;
        out << "      <node id=\"" << detail::xml_escape(id) << "\" label=\""
            << detail::xml_escape(label) << "\">\n"
            << "        <attvalues>\n"
            << "          <attvalue for=\"0\" value=\"" << to_string(data.category) << "\"/>\n";
        if (data.location) {
            out << "          <attvalue for=\"1\" value=\"" << format_double(data.location->lat)
                << "\"/>\n"
                << "          <attvalue for=\"2\" value=\"" << format_double(data.location->lon)
                << "\"/>\n";
        }
        out << "          <attvalue for=\"3\" value=\"" << data.paper_count << "\"/>\n"
            << "        </attvalues>\n"
            << "      </node>\n";
    }
    out << "    </nodes>\n    <edges>\n";
    std::size_t edge_id = 0;
    for (const auto& e : detail::sorted_edges(g))
        out << "      <edge id=\"" << edge_id++ << "\" source=\"" << detail::xml_escape(e.source)
            << "\" target=\"" << detail::xml_escape(e.target) << "\" weight=\""
            << format_double(e.weight) << "\"/>\n";
    out << "    </edges>\n  </graph>\n</gexf>\n";
}

inline void write_resolution_csv(const ResolutionMap& map, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "raw_string,canonical_id,provenance\n";
    for (const auto& [raw, id] : map.entries)
        out << csv_escape(raw) << ',' << csv_escape(id) << ','
            << provenance_token(map.provenance.at(raw)) << '\n';
}

inline void write_metrics_csv(const NodeMetrics& m, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "node,degree,clustering,betweenness,pagerank\n";
    for (const auto& [node, degree] : m.degree)
        out << csv_escape(node) << ',' << degree << ',' << format_double(m.clustering.at(node))
            << ',' << format_double(m.betweenness.at(node)) << ','
            << format_double(m.pagerank.scores.at(node)) << '\n';
}

inline void write_flow_csv(const std::vector<FlowScore>& flows, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "node,f_in,f_out,k_in,k_out,w_in,w_out\n";
    for (const auto& f : flows)
        out << csv_escape(f.node) << ',' << format_double(f.f_in) << ',' << format_double(f.f_out)
            << ',' << f.k_in << ',' << f.k_out << ',' << format_double(f.w_in) << ','
            << format_double(f.w_out) << '\n';
}

inline void write_distance_profile_csv(const DistanceProfile& profile,
                                       const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "bin,lo_km,hi_km,pair_count,mean,median,q1,q3\n";
    for (const auto& b : profile.bins)
        out << b.bin << ',' << format_double(b.lo_km) << ',' << format_double(b.hi_km) << ','
            << b.pair_count << ',' << format_double(b.mean) << ',' << format_double(b.median)
            << ',' << format_double(b.q1) << ',' << format_double(b.q3) << '\n';
}

inline void write_category_table_csv(const std::map<CategoryCode, CategoryTableRow>& table,
                                     const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "category,papers,institutions,papers_per_institute\n";
    for (CategoryCode code : productivity_order(table)) {
        const auto& row = table.at(code);
        out << to_string(code) << ',' << row.papers << ',' << row.institutions << ','
            << format_double(row.papers_per_institute) << '\n';
    }
}

/// Full matrix (zeros included) in productivity order; undirected
/// super-node graphs answer symmetrically.
inline void write_category_matrix_csv(const WeightedGraph& super,
                                      const std::vector<CategoryCode>& order,
                                      const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "row_category,col_category,weight\n";
    for (CategoryCode row : order) {
        for (CategoryCode col : order) {
            double w = super.weight(std::string(to_string(row)), std::string(to_string(col)));
            out << to_string(row) << ',' << to_string(col) << ',' << format_double(w) << '\n';
        }
    }
}

inline void write_category_centrality_csv(
    const std::map<CategoryCode, CategoryCentrality>& summary,
    const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "category,members,avg_degree,avg_clustering,avg_betweenness,avg_pagerank\n";
    for (const auto& [code, c] : summary)
        out << to_string(code) << ',' << c.members << ',' << format_double(c.avg_degree) << ','
            << format_double(c.avg_clustering) << ',' << format_double(c.avg_betweenness) << ','
            << format_double(c.avg_pagerank) << '\n';
}

inline void write_hubs_csv(const std::vector<std::pair<std::string, double>>& hubs,
                           const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "rank,node,weighted_in_degree\n";
    std::size_t rank = 1;
    for (const auto& [node, w] : hubs)
        out << rank++ << ',' << csv_escape(node) << ',' << format_double(w) << '\n';
}

struct CountryRow {
    std::string country;
    double weight = 0.0;
    std::int64_t partner_institutions = 0;
};

/// Collaboration weight between each foreign country node and domestic
/// institutions, for map-style exports.
inline std::vector<CountryRow> country_collaboration(const WeightedGraph& collab,
                                                     const Registry* registry = nullptr) {
    std::map<std::string, CountryRow> rows;
    for (const auto& [key, w] : collab.edges()) {
        auto [u, v] = key;
        if (u == v) continue;
        bool u_foreign = collab.node(u).category == CategoryCode::Foreign;
        bool v_foreign = collab.node(v).category == CategoryCode::Foreign;
        if (u_foreign == v_foreign) continue;  // domestic-domestic or foreign-foreign
        std::size_t f = u_foreign ? u : v;
        std::string name = collab.id_of(f);
        if (registry)
            if (const Institution* inst = registry->find(name))
                name = inst->foreign_country.value_or(inst->display_name);
        CountryRow& row = rows[name];
        row.country = name;
        row.weight += w;
        row.partner_institutions += 1;
    }
    std::vector<CountryRow> out;
    for (auto& [id, row] : rows) out.push_back(std::move(row));
    std::sort(out.begin(), out.end(), [](const CountryRow& a, const CountryRow& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.country < b.country;
    });
    return out;
}

inline void write_countries_csv(const std::vector<CountryRow>& rows,
                                const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "country,weight,partner_institutions\n";
    for (const auto& row : rows)
        out << csv_escape(row.country) << ',' << format_double(row.weight) << ','
            << row.partner_institutions << '\n';
}

}  // namespace scholnet
