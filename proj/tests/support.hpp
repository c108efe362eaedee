#pragma once

#include "vereval/util/files.hpp"

#include <filesystem>
#include <memory>
#include <string>

namespace support {

inline std::filesystem::path data_dir() { return VEREVAL_DATA_DIR; }

inline std::unique_ptr<vereval::util::ScratchDir> temp_dir(const std::string& prefix = "vtest-") {
    return std::make_unique<vereval::util::ScratchDir>(std::filesystem::temp_directory_path(), prefix);
}

inline void put(const std::filesystem::path& p, const std::string& text) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    vereval::util::write_file_atomic(p, text);
}

}  // namespace support

#include "vereval/corpus/minhash.hpp"
#include "vereval/corpus/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <vector>

namespace support {

/// Verilog-looking files: a set of random base modules plus mutated copies
/// (a few tokens replaced), so pair similarities spread around any threshold.
inline std::vector<vereval::corpus::CorpusFile> synthetic_corpus(std::uint64_t seed, std::size_t count = 100) {
    static const std::vector<std::string> vocab = {
        "assign", "wire", "reg", "always", "@(posedge clk)", "begin", "end", "if", "else", "case", "endcase",
        "<=", "=", "+", "-", "&", "|", "^", "~", ";", ",", "(", ")", "[7:0]", "[3:0]", "4'b0000", "1'b1",
        "8'hFF", "q", "d", "clk", "rst", "en", "sum", "carry", "state", "next_state", "count", "out", "in",
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
    auto base_text = [&](std::size_t id) {
        std::string s = "module m" + std::to_string(id) + "(input clk, output out);\n";
        for (int i = 0; i < 160; ++i) s += vocab[word(rng)] + ((i % 12 == 11) ? "\n" : " ");
        return s + "\nendmodule\n";
    };
    auto mutate = [&](std::string s, std::size_t edits) {
        for (std::size_t e = 0; e < edits; ++e) {
            std::uniform_int_distribution<std::size_t> pos(40, s.size() - 12);
            s.insert(pos(rng), " " + vocab[word(rng)] + std::to_string(e) + " ");
        }
        return s;
    };

    std::vector<std::string> bases;
    std::vector<vereval::corpus::CorpusFile> out;
    std::uniform_int_distribution<int> coin(0, 99);
    std::uniform_int_distribution<std::size_t> edits(0, 14);
    for (std::size_t i = 0; i < count; ++i) {
        std::string text;
        if (bases.empty() || coin(rng) < 40) {
            text = base_text(i);
            bases.push_back(text);
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, bases.size() - 1);
            text = mutate(bases[pick(rng)], edits(rng));
        }
        char name[32];
        std::snprintf(name, sizeof name, "f%03zu.v", i);
        out.push_back(vereval::corpus::make_corpus_file(vereval::corpus::Origin::RepoTree, name, std::move(text)));
    }
    return out;
}

/// All-pairs keep-first oracle on exact shingle Jaccard.
inline std::vector<std::string> oracle_kept_ids(const std::vector<vereval::corpus::CorpusFile>& files, double threshold,
                                                std::size_t k = vereval::corpus::kDefaultShingleLength) {
    std::vector<vereval::corpus::ShingleSet> kept_sets;
    std::vector<std::string> kept;
    for (const auto& f : files) {
        const auto s = vereval::corpus::shingle_set(f.text, k);
        bool dup = false;
        for (const auto& g : kept_sets) {
            if (vereval::corpus::jaccard_exact(s, g) >= threshold) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            kept_sets.push_back(s);
            kept.push_back(f.id);
        }
    }
    return kept;
}

/// Two random shingle sets with |A n B| = shared and |A u B| = shared + 2 * each.
inline std::pair<vereval::corpus::ShingleSet, vereval::corpus::ShingleSet> planted_pair(std::uint64_t seed,
                                                                                         std::size_t shared,
                                                                                         std::size_t each) {
    std::mt19937_64 rng(seed);
    vereval::corpus::ShingleSet a, b;
    for (std::size_t i = 0; i < shared; ++i) {
        const auto h = rng();
        a.hashes.push_back(h);
        b.hashes.push_back(h);
    }
    for (std::size_t i = 0; i < each; ++i) a.hashes.push_back(rng());
    for (std::size_t i = 0; i < each; ++i) b.hashes.push_back(rng());
    for (auto* s : {&a, &b}) {
        std::sort(s->hashes.begin(), s->hashes.end());
        s->hashes.erase(std::unique(s->hashes.begin(), s->hashes.end()), s->hashes.end());
    }
    return {a, b};
}

}  // namespace support
