#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::corpus {

struct TrainingExample {
    std::string source_id;
    std::string window_text;
    std::size_t start_offset = 0;  // code point index, inclusive
    std::size_t end_offset = 0;    // code point index, exclusive

    bool operator==(const TrainingExample&) const = default;
};

/// Windows starting at 0, stride, 2*stride, ...; the last one is clamped to the
/// end of the text and ends the sequence. Text no longer than `window` gives a
/// single window; empty text gives none. Offsets are in code points and are
/// shifted by `base_offset`. Throws std::invalid_argument unless
/// 1 <= stride <= window.
std::vector<TrainingExample> sliding_windows(std::string_view text, std::size_t window, std::size_t stride,
                                             const std::string& source_id = {}, std::size_t base_offset = 0);

/// One JSON object per line: {"source_id","start","end","text"}. Writes through a
/// temp file so a failed export leaves nothing behind. Returns the line count.
std::size_t export_training_set(const std::vector<TrainingExample>& examples, const std::filesystem::path& out);

/// Parses a file written by export_training_set. Throws ParseError with a line number.
std::vector<TrainingExample> read_training_set(const std::filesystem::path& in);

}  // namespace vereval::corpus
