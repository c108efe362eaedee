#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::corpus {

enum class Origin { RepoTree, BookText };

std::string_view to_string(Origin o) noexcept;
Origin parse_origin(std::string_view s);

/// Files at or above this many characters are dropped from repository trees.
inline constexpr std::size_t kRepoMaxChars = 20'000;

struct CorpusFile {
    std::string id;             // "<origin>:<relative_path>"
    Origin origin = Origin::RepoTree;
    std::string relative_path;  // generic form, '/' separated
    std::string text;           // valid UTF-8
    std::size_t char_count = 0; // code points in text
    std::string content_hash;   // SHA-256 hex of text
};

CorpusFile make_corpus_file(Origin origin, std::string relative_path, std::string text);

struct ScanOptions {
    /// Files with char_count >= max_chars are rejected. Unset picks the origin
    /// default: kRepoMaxChars for RepoTree, no limit for BookText.
    std::optional<std::size_t> max_chars;
};

struct SkippedFile {
    std::string relative_path;
    std::string reason;
};

struct LossyFile {
    std::string relative_path;
    std::size_t replacements = 0;
};

struct SkipReport {
    std::size_t examined = 0;
    std::size_t wrong_extension = 0;
    std::size_t no_module_pair = 0;
    std::size_t filtered_large = 0;
    std::vector<SkippedFile> unreadable;
    std::vector<LossyFile> lossy;  // kept after replacing invalid UTF-8
};

struct ScanResult {
    std::vector<CorpusFile> files;  // sorted by relative_path
    SkipReport report;
};

/// True when a `module` keyword is followed later by an `endmodule` keyword,
/// ignoring comments and string literals.
bool has_module_pair(std::string_view text);

/// Walks `root` recursively. RepoTree keeps only `.v` files; both origins
/// require a module/endmodule pair. Throws IoError if root is unreadable.
ScanResult scan_sources(const std::filesystem::path& root, Origin origin, const ScanOptions& opts = {});

}  // namespace vereval::corpus
