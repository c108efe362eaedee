#pragma once

#include "vereval/corpus/dedup.hpp"
#include "vereval/corpus/scan.hpp"
#include "vereval/corpus/windows.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vereval::corpus {

struct CorpusSource {
    std::filesystem::path root;
    Origin origin = Origin::RepoTree;
};

struct CorpusBuildOptions {
    std::vector<CorpusSource> sources;
    DedupOptions dedup;
    std::size_t window = 2048;
    std::size_t stride = 0;  // 0 = window / 2
};

struct CorpusStats {
    std::size_t examined = 0;
    std::size_t wrong_extension = 0;
    std::size_t no_module_pair = 0;
    std::size_t filtered_large = 0;
    std::size_t unreadable = 0;
    std::size_t lossy = 0;
    std::size_t kept = 0;
    std::size_t dropped = 0;
    std::size_t blocks = 0;
    std::size_t examples = 0;
};

struct CorpusBuild {
    std::vector<ScanResult> scans;  // one per source, same order
    DedupResult dedup;
    std::vector<TrainingExample> examples;
    CorpusStats stats;
};

/// scan -> deduplicate -> extract blocks (book text) -> sliding windows.
/// Repository files are windowed whole; book files are windowed per module block.
CorpusBuild build_corpus(const CorpusBuildOptions& opts);

/// Deterministic JSON listing kept and dropped files with similarity evidence.
std::string corpus_manifest_json(const CorpusBuild& build, const CorpusBuildOptions& opts);

}  // namespace vereval::corpus
