#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::util {

struct DecodedText {
    std::string text;              // valid UTF-8
    std::size_t replacements = 0;  // invalid sequences replaced with U+FFFD
};

/// Decodes bytes as UTF-8, replacing each maximal invalid subsequence with U+FFFD.
DecodedText decode_utf8_lossy(std::string_view bytes);

/// Number of code points in valid UTF-8 text.
std::size_t code_point_count(std::string_view utf8);

/// Byte offset of every code point, followed by utf8.size(). Size is count + 1.
std::vector<std::size_t> code_point_offsets(std::string_view utf8);

/// Replaces runs of ASCII whitespace by a single space and trims both ends.
std::string collapse_whitespace(std::string_view text);

std::vector<std::string> split_lines(std::string_view text);

}  // namespace vereval::util
