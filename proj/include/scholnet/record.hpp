#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scholnet/errors.hpp"
#include "scholnet/util.hpp"

namespace scholnet {

struct AuthorAffiliation {
    std::string author_key;
    std::vector<std::string> raw_affiliations;

    friend bool operator==(const AuthorAffiliation&, const AuthorAffiliation&) = default;
};

struct PublicationRecord {
    std::string paper_id;
    int year = 0;
    std::vector<AuthorAffiliation> authorships;
    std::vector<std::string> cited_ids;  // deduplicated, input order

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct CorpusSummary {
    std::int64_t papers = 0;
    std::int64_t distinct_raw_affiliations = 0;
    int year_min = 0;
    int year_max = 0;
    std::int64_t citation_events = 0;           // after per-record dedup
    std::int64_t external_citation_count = 0;   // cited ids not in corpus
};

namespace detail {

[[noreturn]] inline void schema_violation(std::size_t line_no, const std::string& field) {
    raise(Errc::SchemaViolation, "line " + std::to_string(line_no) + ": field '" + field + "'");
}

inline PublicationRecord record_from_json(const nlohmann::json& j, std::size_t line_no) {
    if (!j.is_object()) schema_violation(line_no, "record");
    PublicationRecord rec;

    auto pid = j.find("paper_id");
    if (pid == j.end() || !pid->is_string() || pid->get<std::string>().empty())
        schema_violation(line_no, "paper_id");
    rec.paper_id = pid->get<std::string>();

    auto yr = j.find("year");
    if (yr == j.end() || !yr->is_number_integer() || yr->get<std::int64_t>() <= 0 ||
        yr->get<std::int64_t>() > std::numeric_limits<int>::max())
        schema_violation(line_no, "year");
    rec.year = int(yr->get<std::int64_t>());

    auto au = j.find("authorships");
    if (au == j.end() || !au->is_array() || au->empty()) schema_violation(line_no, "authorships");
    for (const auto& a : *au) {
        if (!a.is_object()) schema_violation(line_no, "authorships");
        AuthorAffiliation aa;
        auto key = a.find("author_key");
        if (key == a.end() || !key->is_string()) schema_violation(line_no, "author_key");
        aa.author_key = key->get<std::string>();
        auto raws = a.find("raw_affiliations");
        if (raws == a.end() || !raws->is_array() || raws->empty())
            schema_violation(line_no, "raw_affiliations");
        for (const auto& r : *raws) {
            if (!r.is_string() || trim_view(r.get<std::string>()).empty())
                schema_violation(line_no, "raw_affiliations");
            aa.raw_affiliations.push_back(r.get<std::string>());
        }
        rec.authorships.push_back(std::move(aa));
    }

    auto cited = j.find("cited_ids");
    if (cited == j.end() || !cited->is_array()) schema_violation(line_no, "cited_ids");
    std::set<std::string> seen;
    for (const auto& c : *cited) {
        if (!c.is_string()) schema_violation(line_no, "cited_ids");
        auto id = c.get<std::string>();
        if (seen.insert(id).second) rec.cited_ids.push_back(std::move(id));
    }
    return rec;
}

}  // namespace detail

/// Parses line-delimited JSON records. Blank lines are skipped but still
/// count toward the reported line numbers; unknown fields are ignored.
inline std::vector<PublicationRecord> parse_records(std::istream& in) {
    std::vector<PublicationRecord> records;
    std::set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_view(line).empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded())
            raise(Errc::MalformedLine, "line " + std::to_string(line_no) + ": unparseable JSON");
        auto rec = detail::record_from_json(j, line_no);
        if (!ids.insert(rec.paper_id).second)
            raise(Errc::DuplicatePaperId, "paper_id '" + rec.paper_id + "'");
        records.push_back(std::move(rec));
    }
    return records;
}

inline std::vector<PublicationRecord> parse_records_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open records file " + path.string());
    return parse_records(in);
}

inline void serialize_records(const std::vector<PublicationRecord>& records, std::ostream& out) {
    for (const auto& rec : records) {
        nlohmann::ordered_json j;
        j["paper_id"] = rec.paper_id;
        j["year"] = rec.year;
        auto& arr = j["authorships"] = nlohmann::ordered_json::array();
        for (const auto& a : rec.authorships)
            arr.push_back({{"author_key", a.author_key}, {"raw_affiliations", a.raw_affiliations}});
        j["cited_ids"] = rec.cited_ids;
        out << j.dump() << '\n';
    }
}

inline CorpusSummary validate_corpus(const std::vector<PublicationRecord>& records) {
    if (records.empty()) raise(Errc::EmptyCorpus, "no records");
    CorpusSummary s;
    s.papers = std::int64_t(records.size());
    s.year_min = std::numeric_limits<int>::max();
    s.year_max = std::numeric_limits<int>::min();
    std::set<std::string> raws;
    std::set<std::string> ids;
    for (const auto& rec : records) ids.insert(rec.paper_id);
    for (const auto& rec : records) {
        s.year_min = std::min(s.year_min, rec.year);
        s.year_max = std::max(s.year_max, rec.year);
        for (const auto& a : rec.authorships)
            for (const auto& r : a.raw_affiliations) raws.insert(r);
        for (const auto& c : rec.cited_ids) {
            ++s.citation_events;
            if (!ids.count(c)) ++s.external_citation_count;
        }
    }
    s.distinct_raw_affiliations = std::int64_t(raws.size());
    return s;
}

}  // namespace scholnet
