#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "scholnet/record.hpp"
#include "testutil.hpp"

using namespace scholnet;

namespace {

std::vector<PublicationRecord> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_records(in);
}

}  // namespace

TEST_CASE("well-formed line parses into one record") {
    auto records = parse(
        R"({"paper_id":"p1","year":1995,"authorships":[{"author_key":"a1","raw_affiliations":["TIFR"]},{"author_key":"a2","raw_affiliations":["IISc"]}],"cited_ids":[]})"
        "\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].paper_id == "p1");
    CHECK(records[0].year == 1995);
    CHECK(records[0].authorships.size() == 2);
    CHECK(records[0].cited_ids.empty());
}

TEST_CASE("missing year is a schema violation naming the field") {
    try {
        parse(R"({"paper_id":"p1"})" "\n");
        FAIL("expected SchemaViolation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SchemaViolation);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        CHECK(std::string(e.what()).find("year") != std::string::npos);
    }
}

TEST_CASE("duplicate cited ids collapse to the first occurrence") {
    auto records = parse(
        R"({"paper_id":"p1","year":2000,"authorships":[{"author_key":"a","raw_affiliations":["X"]}],"cited_ids":["q1","q1","q2"]})"
        "\n");
    CHECK(records[0].cited_ids == std::vector<std::string>{"q1", "q2"});
}

TEST_CASE("malformed JSON reports the right line, blank lines counted") {
    std::string good =
        R"({"paper_id":"p1","year":2000,"authorships":[{"author_key":"a","raw_affiliations":["X"]}],"cited_ids":[]})";
    try {
        parse(good + "\n\n   \n not json \n");
        FAIL("expected MalformedLine");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedLine);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("ingest error paths") {
    std::string base =
        R"({"paper_id":"p1","year":2000,"authorships":[{"author_key":"a","raw_affiliations":["X"]}],"cited_ids":[]})";

    SECTION("duplicate paper id") {
        try {
            parse(base + "\n" + base + "\n");
            FAIL("expected DuplicatePaperId");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::DuplicatePaperId);
        }
    }
    SECTION("year must be a positive integer") {
        for (const char* bad : {"0", "-3", "1995.5", "\"1995\""}) {
            std::string line =
                std::string(R"({"paper_id":"p1","year":)") + bad +
                R"(,"authorships":[{"author_key":"a","raw_affiliations":["X"]}],"cited_ids":[]})";
            CHECK_THROWS_AS(parse(line + "\n"), Error);
        }
    }
    SECTION("empty authorships rejected") {
        CHECK_THROWS_AS(parse(R"({"paper_id":"p1","year":2000,"authorships":[],"cited_ids":[]})" "\n"),
                        Error);
    }
    SECTION("whitespace-only affiliation rejected") {
        CHECK_THROWS_AS(
            parse(
                R"({"paper_id":"p1","year":2000,"authorships":[{"author_key":"a","raw_affiliations":["  "]}],"cited_ids":[]})"
                "\n"),
            Error);
    }
}

TEST_CASE("unknown fields are ignored") {
    auto records = parse(
        R"({"paper_id":"p1","year":2000,"doi":"10.1/x","authorships":[{"author_key":"a","raw_affiliations":["X"],"orcid":"0-0"}],"cited_ids":[]})"
        "\n");
    REQUIRE(records.size() == 1);
}

TEST_CASE("parse count equals non-blank line count") {
    std::string text;
    int non_blank = 0;
    for (int i = 0; i < 25; ++i) {
        if (i % 5 == 3) {
            text += "\n";
            continue;
        }
        text += R"({"paper_id":"p)" + std::to_string(i) +
                R"(","year":2001,"authorships":[{"author_key":"a","raw_affiliations":["X"]}],"cited_ids":[]})" "\n";
        ++non_blank;
    }
    CHECK(parse(text).size() == std::size_t(non_blank));
}

TEST_CASE("serialize then re-parse round-trips structurally") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> year(1970, 2013);
    std::uniform_int_distribution<int> n_authors(1, 4);
    std::uniform_int_distribution<int> n_affs(1, 2);
    std::vector<PublicationRecord> records;
    const std::vector<std::string> raws = {"TIFR", "Univ. of Delhi, India",
                                           "Dept. of Physics, MIT, USA", "  spaced  name  "};
    for (int i = 0; i < 40; ++i) {
        PublicationRecord rec;
        rec.paper_id = "p" + std::to_string(i);
        rec.year = year(rng);
        for (int a = 0, n = n_authors(rng); a < n; ++a) {
            AuthorAffiliation author;
            author.author_key = "auth" + std::to_string(a);
            for (int f = 0, m = n_affs(rng); f < m; ++f)
                author.raw_affiliations.push_back(raws[std::size_t(rng()) % raws.size()]);
            rec.authorships.push_back(author);
        }
        if (i > 0) rec.cited_ids.push_back("p" + std::to_string(i - 1));
        records.push_back(rec);
    }

    std::ostringstream out;
    serialize_records(records, out);
    std::istringstream in(out.str());
    auto reparsed = parse_records(in);
    CHECK(reparsed == records);
}

TEST_CASE("validate_corpus summarizes years and external citations") {
    std::vector<PublicationRecord> records;
    records.push_back(testutil::make_record("p1", 1980, {{"a", {"X"}}}, {"p2", "missing"}));
    records.push_back(testutil::make_record("p2", 1970, {{"b", {"Y"}}, {"c", {"X"}}}));
    records.push_back(testutil::make_record("p3", 2013, {{"d", {"Z"}}}, {"p1"}));

    auto summary = validate_corpus(records);
    CHECK(summary.papers == 3);
    CHECK(summary.year_min == 1970);
    CHECK(summary.year_max == 2013);
    CHECK(summary.distinct_raw_affiliations == 3);
    CHECK(summary.citation_events == 3);
    CHECK(summary.external_citation_count == 1);
}

TEST_CASE("validate_corpus rejects an empty corpus") {
    CHECK_THROWS_AS(validate_corpus({}), Error);
}

TEST_CASE("a 14704-record manifest reports 14704 papers") {
    std::vector<PublicationRecord> records;
    records.reserve(14704);
    for (int i = 0; i < 14704; ++i)
        records.push_back(testutil::make_record("p" + std::to_string(i), 1970 + i % 44,
                                                {{"a" + std::to_string(i), {"Inst " + std::to_string(i % 677)}}}));
    CHECK(validate_corpus(records).papers == 14704);
}
