#include "vereval/corpus/dedup.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>

namespace vereval::corpus {

namespace {

struct Sketch {
    ShingleSet shingles;
    MinHashSignature signature;
};

std::vector<Sketch> sketch_all(const std::vector<CorpusFile>& files, const DedupOptions& opts) {
    std::vector<Sketch> out(files.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            out[i].shingles = shingle_set(files[i].text, opts.shingle_length);
            out[i].signature = minhash_signature(out[i].shingles, opts.num_hashes, opts.seed);
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(files.size())));
    if (n <= 1) {
        work();
        return out;
    }
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
    }
    return out;
}

}  // namespace

DedupResult deduplicate(std::vector<CorpusFile> files, const DedupOptions& opts) {
    if (!(opts.threshold > 0.0 && opts.threshold <= 1.0)) {
        throw std::invalid_argument("dedup threshold must be in (0, 1]");
    }
    const auto sketches = sketch_all(files, opts);
    const double candidate_floor = opts.threshold - std::max(0.0, opts.candidate_margin);

    DedupResult result;
    std::vector<std::size_t> kept_idx;
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::optional<DroppedFile> match;
        for (const std::size_t k : kept_idx) {
            const double est = estimate_jaccard(sketches[i].signature, sketches[k].signature);
            if (est < candidate_floor) continue;
            const double exact = jaccard_exact(sketches[i].shingles, sketches[k].shingles);
            if (exact >= opts.threshold) {
                match = DroppedFile{files[i].id, files[k].id, est, exact};
                break;
            }
        }
        if (match) {
            result.dropped.push_back(std::move(*match));
        } else {
            kept_idx.push_back(i);
        }
    }
    result.kept.reserve(kept_idx.size());
    for (const std::size_t k : kept_idx) result.kept.push_back(std::move(files[k]));
    return result;
}

}  // namespace vereval::corpus
