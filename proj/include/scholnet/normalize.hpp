#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scholnet/errors.hpp"
#include "scholnet/util.hpp"

namespace scholnet {

/// Token-level rewrites applied while normalizing affiliation names.
struct NormalizeOptions {
    std::map<std::string, std::string> abbreviations = {
        {"inst", "institute"}, {"tech", "technology"}, {"univ", "university"},
        {"natl", "national"},  {"dept", "department"},
    };
    std::set<std::string> stop_tokens = {"of", "the", "and"};
};

/// Lowercases, strips punctuation, collapses whitespace, expands known
/// abbreviations and drops stop tokens. The result is stable under a
/// second application.
inline std::string normalize_name(std::string_view raw, const NormalizeOptions& opts = {}) {
    std::string lowered = to_lower_ascii(raw);
    // punctuation to spaces; bytes >= 0x80 pass through untouched
    for (char& c : lowered) {
        unsigned char u = (unsigned char)c;
        if (u < 0x80 && !(std::isalnum(u) || c == ' ' || c == '\t' || c == '\r' || c == '\n'))
            c = ' ';
    }
    std::string collapsed = collapse_whitespace(lowered);

    std::string out;
    for (auto& token : split(collapsed, ' ')) {
        if (token.empty()) continue;
        auto abbrev = opts.abbreviations.find(token);
        const std::string& word = abbrev == opts.abbreviations.end() ? token : abbrev->second;
        if (opts.stop_tokens.count(word)) continue;
        if (!out.empty()) out.push_back(' ');
        out += word;
    }
    if (out.empty())
        raise(Errc::EmptyAfterNormalization, "'" + std::string(raw) + "'");
    return out;
}

}  // namespace scholnet
