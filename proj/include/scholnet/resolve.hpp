#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scholnet/category.hpp"
#include "scholnet/edit_distance.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/geo.hpp"
#include "scholnet/normalize.hpp"
#include "scholnet/util.hpp"

namespace scholnet {

struct Institution {
    std::string canonical_id;
    std::string display_name;
    CategoryCode category = CategoryCode::Unclassified;
    std::optional<std::string> pincode;          // exactly 6 digits when present
    std::optional<std::string> foreign_country;  // set iff category == Foreign
    std::optional<GeoPoint> location;

    bool is_foreign() const { return category == CategoryCode::Foreign; }
};

/// Immutable-ish collection of canonical institutions, keyed by id.
class Registry {
public:
    void add(Institution inst) {
        if (inst.is_foreign() && inst.pincode)
            raise(Errc::InvalidInput, "foreign institution '" + inst.canonical_id + "' has a pincode");
        if (inst.pincode && !(is_digits(*inst.pincode) && inst.pincode->size() == 6))
            raise(Errc::InvalidInput, "institution '" + inst.canonical_id + "' pincode must be 6 digits");
        if (inst.location && !valid_geo_point(*inst.location))
            raise(Errc::InvalidInput, "institution '" + inst.canonical_id + "' has out-of-range coordinates");
        auto [it, inserted] = by_id_.emplace(inst.canonical_id, items_.size());
        if (!inserted)
            raise(Errc::InvalidInput, "duplicate canonical_id '" + inst.canonical_id + "'");
        items_.push_back(std::move(inst));
    }

    const Institution* find(const std::string& canonical_id) const {
        auto it = by_id_.find(canonical_id);
        return it == by_id_.end() ? nullptr : &items_[it->second];
    }

    const std::vector<Institution>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

private:
    std::vector<Institution> items_;
    std::map<std::string, std::size_t> by_id_;
};

/// Coordinates for distance analyses; foreign and unlocated institutions
/// yield nothing and are excluded (callers tally the exclusions).
inline std::optional<GeoPoint> locate(const Institution& inst) {
    if (inst.is_foreign()) return std::nullopt;
    return inst.location;
}

inline std::optional<GeoPoint> locate(const std::string& canonical_id, const Registry& registry) {
    const Institution* inst = registry.find(canonical_id);
    if (!inst) return std::nullopt;
    return locate(*inst);
}

enum class Provenance { AliasMap, Exact, Cluster, Foreign, Fresh };

constexpr std::string_view provenance_token(Provenance p) {
    switch (p) {
        case Provenance::AliasMap: return "alias_map";
        case Provenance::Exact: return "exact";
        case Provenance::Cluster: return "cluster";
        case Provenance::Foreign: return "foreign";
        case Provenance::Fresh: return "fresh";
    }
    return "fresh";
}

/// Total mapping from every raw affiliation string seen to a canonical id.
struct ResolutionMap {
    std::map<std::string, std::string> entries;
    std::map<std::string, Provenance> provenance;

    const std::string& canonical(const std::string& raw) const {
        auto it = entries.find(raw);
        if (it == entries.end()) raise(Errc::UnresolvedAffiliation, "'" + raw + "'");
        return it->second;
    }
    std::size_t size() const { return entries.size(); }
};

/// Resolution output: the mapping plus the registry extended with any
/// fresh foreign/unclassified institutions minted along the way.
struct ResolveResult {
    ResolutionMap map;
    Registry registry;
    std::int64_t created_foreign = 0;
    std::int64_t created_unclassified = 0;
};

struct ResolveParams {
    double threshold = 0.15;  // normalized edit distance cutoff
    NormalizeOptions normalize;
};

/// Case-insensitive suffix match of the affiliation tail against the
/// gazetteer (both sides normalized). Returns the normalized country
/// name, or nothing for domestic affiliations.
inline std::optional<std::string> tag_foreign(const std::string& raw,
                                              const std::vector<std::string>& gazetteer,
                                              const NormalizeOptions& opts = {}) {
    std::string norm;
    try {
        norm = normalize_name(raw, opts);
    } catch (const Error&) {
        return std::nullopt;
    }
    for (const auto& country : gazetteer) {
        std::string c = normalize_name(country, opts);
        if (norm == c) return c;
        if (norm.size() > c.size() && norm.compare(norm.size() - c.size(), c.size(), c) == 0 &&
            norm[norm.size() - c.size() - 1] == ' ')
            return c;
    }
    return std::nullopt;
}

/// Registry category for a resolved id. Fresh ids minted by resolution
/// carry their category in the id prefix.
inline CategoryCode assign_category(const std::string& canonical_id, const Registry& registry) {
    if (const Institution* inst = registry.find(canonical_id)) return inst->category;
    if (canonical_id.starts_with("u:")) return CategoryCode::Unclassified;
    if (canonical_id.starts_with("foreign:")) return CategoryCode::Foreign;
    raise(Errc::UnknownInstitution, "'" + canonical_id + "'");
}

namespace detail {

class Matcher {
public:
    Matcher(const Registry& registry, const NormalizeOptions& opts) : registry_(registry) {
        for (std::size_t i = 0; i < registry.items().size(); ++i) {
            const auto& inst = registry.items()[i];
            std::string norm;
            try {
                norm = normalize_name(inst.display_name, opts);
            } catch (const Error&) {
                continue;  // unnormalizable registry names never match
            }
            auto [it, inserted] = exact_.emplace(norm, i);
            // ties on identical normalized names: smallest canonical_id wins
            if (!inserted && inst.canonical_id < registry.items()[it->second].canonical_id)
                it->second = i;
            norms_.emplace_back(std::move(norm), i);
        }
    }

    const Institution* exact(const std::string& norm) const {
        auto it = exact_.find(norm);
        return it == exact_.end() ? nullptr : &registry_.items()[it->second];
    }

    const Institution* nearest(const std::string& norm, double threshold) const {
        const Institution* best = nullptr;
        double best_dist = threshold;
        for (const auto& [rnorm, idx] : norms_) {
            double d = normalized_edit_distance(norm, rnorm);
            if (d > best_dist) continue;
            const Institution* cand = &registry_.items()[idx];
            if (d < best_dist || !best || cand->canonical_id < best->canonical_id) {
                best = cand;
                best_dist = d;
            }
        }
        return best;
    }

private:
    const Registry& registry_;
    std::map<std::string, std::size_t> exact_;
    std::vector<std::pair<std::string, std::size_t>> norms_;
};

inline void check_alias_targets(const std::map<std::string, std::string>& alias_map,
                                const Registry& registry) {
    for (const auto& [raw, target] : alias_map)
        if (!registry.find(target))
            raise(Errc::AliasTargetMissing, "'" + target + "' (alias for '" + raw + "')");
}

}  // namespace detail

/// Full resolution pipeline over a batch of raw affiliation strings:
/// curated aliases first, then foreign tagging, then exact and fuzzy
/// matching against the registry; anything left becomes a fresh
/// Unclassified singleton. Deterministic for a given input order.
inline ResolveResult resolve_affiliations(const std::vector<std::string>& raws,
                                          const Registry& registry,
                                          const std::map<std::string, std::string>& alias_map = {},
                                          const std::vector<std::string>& gazetteer = {},
                                          const ResolveParams& params = {}) {
    detail::check_alias_targets(alias_map, registry);
    detail::Matcher matcher(registry, params.normalize);

    ResolveResult res;
    res.registry = registry;
    // foreign registry entries are reusable targets for gazetteer hits
    std::map<std::string, std::string> foreign_by_country;
    for (const auto& inst : registry.items())
        if (inst.is_foreign()) {
            std::string key = inst.foreign_country ? normalize_name(*inst.foreign_country, params.normalize)
                                                   : normalize_name(inst.display_name, params.normalize);
            foreign_by_country.emplace(key, inst.canonical_id);
        }

    auto record = [&res](const std::string& raw, const std::string& id, Provenance p) {
        res.map.entries.emplace(raw, id);
        res.map.provenance.emplace(raw, p);
    };

    for (const auto& raw : raws) {
        if (res.map.entries.count(raw)) continue;

        if (auto alias = alias_map.find(raw); alias != alias_map.end()) {
            record(raw, alias->second, Provenance::AliasMap);
            continue;
        }

        if (auto country = tag_foreign(raw, gazetteer, params.normalize)) {
            auto it = foreign_by_country.find(*country);
            if (it == foreign_by_country.end()) {
                Institution inst;
                inst.canonical_id = "foreign:" + slugify(*country);
                inst.display_name = *country;
                inst.category = CategoryCode::Foreign;
                inst.foreign_country = *country;
                res.registry.add(inst);
                ++res.created_foreign;
                it = foreign_by_country.emplace(*country, inst.canonical_id).first;
            }
            record(raw, it->second, Provenance::Foreign);
            continue;
        }

        std::string norm;
        try {
            norm = normalize_name(raw, params.normalize);
        } catch (const Error&) {
            norm = "unnamed";  // dirty data never aborts the pipeline
        }

        if (const Institution* inst = matcher.exact(norm)) {
            record(raw, inst->canonical_id, Provenance::Exact);
            continue;
        }
        if (const Institution* inst = matcher.nearest(norm, params.threshold)) {
            record(raw, inst->canonical_id, Provenance::Cluster);
            continue;
        }

        std::string fresh_id = "u:" + slugify(norm);
        if (!res.registry.find(fresh_id)) {
            Institution inst;
            inst.canonical_id = fresh_id;
            inst.display_name = collapse_whitespace(raw);
            if (inst.display_name.empty()) inst.display_name = norm;
            inst.category = CategoryCode::Unclassified;
            res.registry.add(inst);
            ++res.created_unclassified;
        }
        record(raw, fresh_id, Provenance::Fresh);
    }
    return res;
}

/// Alias -> exact -> fuzzy-cluster -> fresh, with no foreign tagging.
inline ResolutionMap cluster_affiliations(const std::vector<std::string>& raws, double threshold,
                                          const std::map<std::string, std::string>& alias_map,
                                          const Registry& registry,
                                          const NormalizeOptions& normalize_opts = {}) {
    ResolveParams params;
    params.threshold = threshold;
    params.normalize = normalize_opts;
    return resolve_affiliations(raws, registry, alias_map, {}, params).map;
}

}  // namespace scholnet
