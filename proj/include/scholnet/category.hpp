#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace scholnet {

/// UGC institution categories plus two artifact extensions: Foreign for
/// non-Indian affiliations and Unclassified for affiliations that could
/// not be matched to the registry.
enum class CategoryCode {
    NRI,   // National Research Institutes
    INI,   // Institutes of National Importance
    CU,    // Central Universities
    SU,    // State Universities
    SC,    // State Colleges
    CC,    // Central Colleges
    DU,    // Deemed Universities
    PU,    // Private Universities
    PI,    // Private Institutes
    SRI,   // State Research Institutes
    Foreign,
    Unclassified,
};

inline constexpr std::array<CategoryCode, 12> kAllCategories = {
    CategoryCode::NRI, CategoryCode::INI, CategoryCode::CU,  CategoryCode::SU,
    CategoryCode::SC,  CategoryCode::CC,  CategoryCode::DU,  CategoryCode::PU,
    CategoryCode::PI,  CategoryCode::SRI, CategoryCode::Foreign, CategoryCode::Unclassified,
};

constexpr std::string_view to_string(CategoryCode c) {
    switch (c) {
        case CategoryCode::NRI: return "NRI";
        case CategoryCode::INI: return "INI";
        case CategoryCode::CU: return "CU";
        case CategoryCode::SU: return "SU";
        case CategoryCode::SC: return "SC";
        case CategoryCode::CC: return "CC";
        case CategoryCode::DU: return "DU";
        case CategoryCode::PU: return "PU";
        case CategoryCode::PI: return "PI";
        case CategoryCode::SRI: return "SRI";
        case CategoryCode::Foreign: return "FOREIGN";
        case CategoryCode::Unclassified: return "UNCLASSIFIED";
    }
    return "UNCLASSIFIED";
}

inline std::optional<CategoryCode> category_from_string(std::string_view s) {
    for (CategoryCode c : kAllCategories)
        if (to_string(c) == s) return c;
    return std::nullopt;
}

}  // namespace scholnet
