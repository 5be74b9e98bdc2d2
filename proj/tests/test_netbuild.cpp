#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scholnet/netbuild.hpp"
#include "testutil.hpp"

using namespace scholnet;

namespace {

/// Records over the five-institution registry, referenced by exact name.
struct Corpus {
    Registry registry = testutil::five_institution_registry();
    std::vector<PublicationRecord> records;
    ResolutionMap resolution;
    std::optional<PaperIndex> index;

    void resolve() {
        std::vector<std::string> raws;
        std::set<std::string> seen;
        for (const auto& rec : records)
            for (const auto& author : rec.authorships)
                for (const auto& raw : author.raw_affiliations)
                    if (seen.insert(raw).second) raws.push_back(raw);
        resolution = cluster_affiliations(raws, 0.15, {}, registry);
        index = PaperIndex::build(records, resolution);
    }
};

const std::string kTifr = "Tata Institute of Fundamental Research";
const std::string kIisc = "Indian Institute of Science";
const std::string kIitk = "Indian Institute of Technology Kanpur";

}  // namespace

TEST_CASE("collaboration weights count author pairs") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record(
        "p1", 1990, {{"a1", {kTifr}}, {"a2", {kTifr}}, {"a3", {kIisc}}}));
    corpus.resolve();
    auto g = build_collaboration_network(*corpus.index, corpus.registry);

    CHECK(g.weight("in-tifr", "in-iisc") == 2.0);   // 2 x 1 pairs
    CHECK(g.weight("in-iisc", "in-tifr") == 2.0);   // symmetric query
    CHECK(g.weight("in-tifr", "in-tifr") == 1.0);   // 2 choose 2
    CHECK(g.weight("in-iisc", "in-iisc") == 0.0);
    CHECK(g.node("in-tifr").paper_count == 1);
}

TEST_CASE("collaboration weights accumulate across papers") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("p1", 1990, {{"a", {kTifr}}, {"b", {kIisc}}}));
    corpus.records.push_back(testutil::make_record("p2", 1991, {{"c", {kTifr}}, {"d", {kIisc}}}));
    corpus.resolve();
    auto g = build_collaboration_network(*corpus.index, corpus.registry);
    CHECK(g.weight("in-tifr", "in-iisc") == 2.0);
    CHECK(g.node("in-tifr").paper_count == 2);
}

TEST_CASE("single-author papers create nodes but no edges") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("p1", 1990, {{"a", {kTifr}}}));
    corpus.resolve();
    auto g = build_collaboration_network(*corpus.index, corpus.registry);
    CHECK(g.has_node("in-tifr"));
    CHECK(g.edge_count() == 0);
    CHECK(g.node("in-tifr").category == CategoryCode::NRI);
    REQUIRE(g.node("in-tifr").location.has_value());
}

TEST_CASE("a multi-affiliation author links their institutions") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("p1", 1990, {{"a", {kTifr, kIisc}}}));
    corpus.resolve();
    auto g = build_collaboration_network(*corpus.index, corpus.registry);
    CHECK(g.weight("in-tifr", "in-iisc") == 1.0);
    CHECK(g.weight("in-tifr", "in-tifr") == 0.0);
}

TEST_CASE("papers mode counts papers instead of author pairs") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record(
        "p1", 1990,
        {{"a1", {kTifr}}, {"a2", {kTifr}}, {"a3", {kIisc}}, {"a4", {kIisc}}, {"a5", {kIisc}}}));
    corpus.resolve();
    auto pairs = build_collaboration_network(*corpus.index, corpus.registry, EdgeWeightMode::Pairs);
    auto papers = build_collaboration_network(*corpus.index, corpus.registry, EdgeWeightMode::Papers);
    CHECK(pairs.weight("in-tifr", "in-iisc") == 6.0);
    CHECK(papers.weight("in-tifr", "in-iisc") == 1.0);
    CHECK(pairs.weight("in-iisc", "in-iisc") == 3.0);
    CHECK(papers.weight("in-iisc", "in-iisc") == 1.0);
}

TEST_CASE("per-paper collaboration weight is conserved") {
    std::mt19937 rng(31);
    Corpus corpus;
    std::uniform_int_distribution<int> n_authors(1, 5);
    std::uniform_int_distribution<int> which(0, 2);
    const std::string names[3] = {kTifr, kIisc, kIitk};
    for (int p = 0; p < 60; ++p) {
        std::vector<std::pair<std::string, std::vector<std::string>>> authors;
        for (int a = 0, n = n_authors(rng); a < n; ++a)
            authors.push_back({"a" + std::to_string(p) + "_" + std::to_string(a),
                               {names[which(rng)]}});
        corpus.records.push_back(testutil::make_record("p" + std::to_string(p), 1990, authors));
    }
    corpus.resolve();
    auto g = build_collaboration_network(*corpus.index, corpus.registry);

    double expected = 0.0;
    for (const auto& paper : corpus.index->papers()) {
        const auto& insts = paper.institutions;
        for (std::size_t a = 0; a < insts.size(); ++a) {
            expected += double(insts[a].second * (insts[a].second - 1) / 2);
            for (std::size_t b = a + 1; b < insts.size(); ++b)
                expected += double(insts[a].second) * double(insts[b].second);
        }
    }
    CHECK(g.total_weight() == expected);
}

TEST_CASE("citation edges count cited papers, not author pairs") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("q1", 1980, {{"x", {kIisc}}, {"y", {kIisc}}}));
    corpus.records.push_back(testutil::make_record(
        "p1", 1990, {{"a", {kTifr}}, {"b", {kTifr}}, {"c", {kTifr}}}, {"q1"}));
    corpus.resolve();
    auto g = build_citation_network(*corpus.index, corpus.registry);
    CHECK(g.weight("in-tifr", "in-iisc") == 1.0);  // one citation event
    CHECK(g.weight("in-iisc", "in-tifr") == 0.0);  // directed
}

TEST_CASE("citing a paper shared with the citer produces a self-loop") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("q1", 1980, {{"x", {kIisc}}}));
    corpus.records.push_back(
        testutil::make_record("p1", 1990, {{"a", {kTifr}}, {"b", {kIisc}}}, {"q1"}));
    corpus.resolve();
    auto g = build_citation_network(*corpus.index, corpus.registry);
    CHECK(g.weight("in-tifr", "in-iisc") == 1.0);
    CHECK(g.weight("in-iisc", "in-iisc") == 1.0);
}

TEST_CASE("citing two papers at one institution doubles the edge") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("q1", 1980, {{"x", {kIisc}}}));
    corpus.records.push_back(testutil::make_record("q2", 1981, {{"y", {kIisc}}}));
    corpus.records.push_back(testutil::make_record("p1", 1990, {{"a", {kTifr}}}, {"q1", "q2"}));
    corpus.resolve();
    auto g = build_citation_network(*corpus.index, corpus.registry);
    CHECK(g.weight("in-tifr", "in-iisc") == 2.0);
}

TEST_CASE("citations to papers outside the corpus are skipped and counted") {
    Corpus corpus;
    corpus.records.push_back(
        testutil::make_record("p1", 1990, {{"a", {kTifr}}}, {"missing1", "missing2"}));
    corpus.resolve();
    auto g = build_citation_network(*corpus.index, corpus.registry);
    CHECK(g.edge_count() == 0);
    CHECK(corpus.index->external_citation_count() == 2);
}

TEST_CASE("supernode aggregation sums crossing and internal weights") {
    WeightedGraph g(false);
    g.add_node("A");
    g.add_node("B");
    g.add_node("C");
    g.add_edge("A", "C", 2.0);
    g.add_edge("B", "C", 3.0);
    std::map<std::string, CategoryCode> cats = {{"A", CategoryCode::NRI},
                                                {"B", CategoryCode::NRI},
                                                {"C", CategoryCode::SU}};
    auto super = aggregate_supernodes(g, cats);
    CHECK(super.weight("NRI", "SU") == 5.0);

    g.add_edge("A", "B", 4.0);  // both NRI: lands on the self-loop
    super = aggregate_supernodes(g, cats);
    CHECK(super.weight("NRI", "NRI") == 4.0);
    CHECK(super.total_weight() == g.total_weight());
}

TEST_CASE("single-category graphs collapse into one self-looped super node") {
    WeightedGraph g(false);
    g.add_edge("A", "B", 1.5);
    g.add_edge("B", "C", 2.5);
    g.add_edge("A", "A", 1.0);
    std::map<std::string, CategoryCode> cats = {{"A", CategoryCode::CU},
                                                {"B", CategoryCode::CU},
                                                {"C", CategoryCode::CU}};
    auto super = aggregate_supernodes(g, cats);
    CHECK(super.node_count() == 1);
    CHECK(super.weight("CU", "CU") == 5.0);
}

TEST_CASE("supernode aggregation conserves total weight on random graphs") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> cat_pick(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = trial % 2 == 0 ? testutil::random_digraph(rng, 9)
                                : testutil::random_connected_graph(rng, 9);
        std::map<std::string, CategoryCode> cats;
        for (std::size_t i = 0; i < g.node_count(); ++i)
            cats.emplace(g.id_of(i), kAllCategories[std::size_t(cat_pick(rng))]);
        auto super = aggregate_supernodes(g, cats);
        CHECK(super.total_weight() == g.total_weight());
    }
}

TEST_CASE("supernode paper counts deduplicate papers within a category") {
    Corpus corpus;
    // one paper spanning two NRI institutions
    corpus.records.push_back(testutil::make_record(
        "p1", 1990, {{"a", {kTifr}}, {"b", {"Saha Institute of Nuclear Physics"}}}));
    corpus.resolve();
    auto g = build_collaboration_network(*corpus.index, corpus.registry);

    auto summed = aggregate_supernodes(g);            // member counts summed
    auto exact = aggregate_supernodes(g, &*corpus.index);  // distinct papers
    CHECK(summed.node("NRI").paper_count == 2);
    CHECK(exact.node("NRI").paper_count == 1);
}

TEST_CASE("cumulative snapshots grow monotonically and end at the full graph") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("p1", 1970, {{"a", {kTifr}}, {"b", {kIisc}}}));
    corpus.records.push_back(
        testutil::make_record("p2", 1980, {{"c", {kTifr}}, {"d", {kIitk}}}, {"p1"}));
    corpus.resolve();

    auto series = cumulative_snapshots(corpus.records, corpus.resolution, corpus.registry,
                                       NetworkKind::Collaboration, {1975, 1985});
    REQUIRE(series.size() == 2);
    CHECK(series[0].second.weight("in-tifr", "in-iisc") == 1.0);
    CHECK(series[0].second.weight("in-tifr", "in-iitk") == 0.0);
    CHECK_FALSE(series[0].second.has_node("in-iitk"));

    auto full = build_collaboration_network(*corpus.index, corpus.registry);
    CHECK(series[1].second.total_weight() == full.total_weight());
    CHECK(series[1].second.node_count() == full.node_count());

    auto citations = cumulative_snapshots(corpus.records, corpus.resolution, corpus.registry,
                                          NetworkKind::Citation, {1975, 1985});
    CHECK(citations[0].second.total_weight() == 0.0);  // citing paper not yet present
    CHECK(citations[1].second.weight("in-tifr", "in-iisc") == 1.0);
}

TEST_CASE("snapshots before any record are empty graphs") {
    Corpus corpus;
    corpus.records.push_back(testutil::make_record("p1", 1990, {{"a", {kTifr}}}));
    corpus.resolve();
    auto series = cumulative_snapshots(corpus.records, corpus.resolution, corpus.registry,
                                       NetworkKind::Collaboration, {1980});
    REQUIRE(series.size() == 1);
    CHECK(series[0].second.node_count() == 0);
}

TEST_CASE("snapshot series are monotone for random corpora") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> year(1970, 2013);
    std::uniform_int_distribution<int> which(0, 4);
    Corpus corpus;
    for (int p = 0; p < 80; ++p) {
        std::vector<std::pair<std::string, std::vector<std::string>>> authors;
        int n = 1 + int(rng() % 3);
        for (int a = 0; a < n; ++a)
            authors.push_back(
                {"a" + std::to_string(p) + "_" + std::to_string(a),
                 {corpus.registry.items()[std::size_t(which(rng))].display_name}});
        std::vector<std::string> cited;
        if (p > 0 && rng() % 2) cited.push_back("p" + std::to_string(rng() % std::uint32_t(p)));
        corpus.records.push_back(
            testutil::make_record("p" + std::to_string(p), year(rng), authors, cited));
    }
    corpus.resolve();

    for (auto kind : {NetworkKind::Collaboration, NetworkKind::Citation}) {
        auto series = cumulative_snapshots(corpus.records, corpus.resolution, corpus.registry, kind,
                                           {1975, 1980, 1990, 2000, 2013});
        for (std::size_t i = 1; i < series.size(); ++i) {
            const auto& prev = series[i - 1].second;
            const auto& cur = series[i].second;
            CHECK(prev.node_count() <= cur.node_count());
            CHECK(prev.edge_count() <= cur.edge_count());
            CHECK(prev.total_weight() <= cur.total_weight());
            // every earlier node survives, every earlier edge keeps at least its weight
            for (std::size_t v = 0; v < prev.node_count(); ++v) CHECK(cur.has_node(prev.id_of(v)));
            for (const auto& [key, w] : prev.edges())
                CHECK(cur.weight(prev.id_of(key.first), prev.id_of(key.second)) >= w);
        }
    }
}
