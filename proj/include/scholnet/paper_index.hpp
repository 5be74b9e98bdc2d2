#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scholnet/category.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/record.hpp"
#include "scholnet/resolve.hpp"

namespace scholnet {

/// Corpus resolved to institution level: which institutions appear on
/// each paper (with author counts), which papers each institution has,
/// and the in-corpus citation links. Both the network builders and the
/// strength/productivity measures read from here.
class PaperIndex {
public:
    struct Paper {
        std::string paper_id;
        int year = 0;
        // sorted by institution id; count = authors with >=1 affiliation there
        std::vector<std::pair<std::string, int>> institutions;
        std::vector<std::string> cited_in_corpus;   // paper ids present in the corpus
        std::int64_t external_citations = 0;
    };

    static PaperIndex build(const std::vector<PublicationRecord>& records,
                            const ResolutionMap& resolution) {
        PaperIndex index;
        std::set<std::string> corpus_ids;
        for (const auto& rec : records) corpus_ids.insert(rec.paper_id);

        for (const auto& rec : records) {
            Paper paper;
            paper.paper_id = rec.paper_id;
            paper.year = rec.year;

            std::map<std::string, int> counts;
            for (const auto& author : rec.authorships) {
                std::set<std::string> author_insts;
                for (const auto& raw : author.raw_affiliations)
                    author_insts.insert(resolution.canonical(raw));
                for (const auto& inst : author_insts) ++counts[inst];
            }
            paper.institutions.assign(counts.begin(), counts.end());

            for (const auto& cited : rec.cited_ids) {
                if (corpus_ids.count(cited)) paper.cited_in_corpus.push_back(cited);
                else ++paper.external_citations;
            }

            std::size_t paper_idx = index.papers_.size();
            for (const auto& [inst, n] : paper.institutions)
                index.papers_of_[inst].push_back(paper_idx);
            index.by_id_.emplace(paper.paper_id, paper_idx);
            index.papers_.push_back(std::move(paper));
        }
        return index;
    }

    const std::vector<Paper>& papers() const { return papers_; }

    const Paper* find(const std::string& paper_id) const {
        auto it = by_id_.find(paper_id);
        return it == by_id_.end() ? nullptr : &papers_[it->second];
    }

    /// w_i: number of distinct papers with at least one author at inst.
    std::int64_t paper_count(const std::string& inst) const {
        auto it = papers_of_.find(inst);
        return it == papers_of_.end() ? 0 : std::int64_t(it->second.size());
    }

    /// C_ij: distinct papers shared by both institutions (C_ii = w_i).
    std::int64_t common_papers(const std::string& i, const std::string& j) const {
        auto a = papers_of_.find(i);
        auto b = papers_of_.find(j);
        if (a == papers_of_.end() || b == papers_of_.end()) return 0;
        std::int64_t common = 0;
        auto ia = a->second.begin();
        auto ib = b->second.begin();
        while (ia != a->second.end() && ib != b->second.end()) {
            if (*ia < *ib) ++ia;
            else if (*ib < *ia) ++ib;
            else { ++common; ++ia; ++ib; }
        }
        return common;
    }

    std::vector<std::string> institutions() const {
        std::vector<std::string> out;
        out.reserve(papers_of_.size());
        for (const auto& [inst, papers] : papers_of_) out.push_back(inst);
        return out;  // sorted: papers_of_ is ordered
    }

    std::int64_t external_citation_count() const {
        std::int64_t total = 0;
        for (const auto& p : papers_) total += p.external_citations;
        return total;
    }

    /// Distinct papers per category; a paper counts toward every category
    /// present among its institutions.
    std::map<CategoryCode, std::int64_t> category_paper_counts(
        const std::map<std::string, CategoryCode>& categories) const {
        std::map<CategoryCode, std::int64_t> counts;
        for (const auto& paper : papers_) {
            std::set<CategoryCode> present;
            for (const auto& [inst, n] : paper.institutions) {
                auto it = categories.find(inst);
                if (it != categories.end()) present.insert(it->second);
            }
            for (CategoryCode c : present) ++counts[c];
        }
        return counts;
    }

private:
    std::vector<Paper> papers_;
    std::map<std::string, std::size_t> by_id_;
    std::map<std::string, std::vector<std::size_t>> papers_of_;
};

}  // namespace scholnet
