#pragma once

#include "vereval/corpus/minhash.hpp"
#include "vereval/corpus/scan.hpp"

#include <string>
#include <vector>

namespace vereval::corpus {

inline constexpr double kDefaultDedupThreshold = 0.85;

struct DedupOptions {
    double threshold = kDefaultDedupThreshold;
    std::size_t num_hashes = kDefaultNumHashes;
    std::size_t shingle_length = kDefaultShingleLength;
    std::uint64_t seed = kDefaultMinHashSeed;
    /// Signature estimates within this margin below the threshold are still
    /// verified exactly, so sketch noise cannot hide a true duplicate.
    double candidate_margin = 0.15;
    unsigned workers = 1;
};

struct DroppedFile {
    std::string duplicate_id;
    std::string kept_id;
    double estimated_similarity = 0.0;
    double exact_similarity = 0.0;
};

struct DedupResult {
    std::vector<CorpusFile> kept;      // input order preserved
    std::vector<DroppedFile> dropped;  // input order preserved
};

/// Keep-first near-duplicate removal. A file is dropped when some earlier kept
/// file is a signature candidate and their exact shingle Jaccard is >= threshold.
/// Throws std::invalid_argument unless 0 < threshold <= 1.
DedupResult deduplicate(std::vector<CorpusFile> files, const DedupOptions& opts = {});

}  // namespace vereval::corpus
