#pragma once

#include "vereval/errors.hpp"

#include <array>
#include <string>
#include <string_view>

namespace vereval {

/// Prompt detail tier: low, medium, high.
enum class Detail { L, M, H };

inline constexpr std::array<Detail, 3> kAllDetails{Detail::L, Detail::M, Detail::H};

constexpr std::string_view to_string(Detail d) noexcept {
    switch (d) {
        case Detail::L: return "L";
        case Detail::M: return "M";
        case Detail::H: return "H";
    }
    return "?";
}

inline Detail parse_detail(std::string_view s) {
    if (s == "L" || s == "l") return Detail::L;
    if (s == "M" || s == "m") return Detail::M;
    if (s == "H" || s == "h") return Detail::H;
    throw ParseError("unknown detail level '" + std::string(s) + "' (expected L, M or H)");
}

}  // namespace vereval
