#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

namespace scholnet {

/// Levenshtein distance with unit-cost insert/delete/substitute.
inline std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cur[0] = i + 1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t sub = prev[j] + (a[i] == b[j] ? 0 : 1);
            cur[j + 1] = std::min({cur[j] + 1, prev[j + 1] + 1, sub});
        }
        prev.swap(cur);
    }
    return prev[b.size()];
}

/// Distance scaled by the longer string's length; 0 for two empty strings.
inline double normalized_edit_distance(std::string_view a, std::string_view b) {
    std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 0.0;
    return double(edit_distance(a, b)) / double(longest);
}

}  // namespace scholnet
