#include "support.hpp"

#include "vereval/corpus/blocks.hpp"
#include "vereval/corpus/dedup.hpp"
#include "vereval/corpus/manifest.hpp"
#include "vereval/corpus/minhash.hpp"
#include "vereval/corpus/scan.hpp"
#include "vereval/corpus/windows.hpp"
#include "vereval/errors.hpp"
#include "vereval/util/digest.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <regex>

using namespace vereval;
using namespace vereval::corpus;

TEST(Scan, KeepsSmallVerilogWithModulePair) {
    auto dir = support::temp_dir();
    support::put(dir->path() / "a.v", "module m(); endmodule");
    const auto r = scan_sources(dir->path(), Origin::RepoTree);
    ASSERT_EQ(r.files.size(), 1u);
    EXPECT_EQ(r.files[0].relative_path, "a.v");
    EXPECT_EQ(r.files[0].char_count, 21u);
    EXPECT_EQ(r.files[0].id, "repo:a.v");
}

TEST(Scan, FiltersLargeFiles) {
    auto dir = support::temp_dir();
    std::string big = "module big;\n";
    while (big.size() < 25'000 - 10) big += "// padding\n";
    big += "endmodule\n";
    support::put(dir->path() / "big.v", big);
    const auto r = scan_sources(dir->path(), Origin::RepoTree);
    EXPECT_TRUE(r.files.empty());
    EXPECT_EQ(r.report.filtered_large, 1u);

    // The size limit applies to repository trees only.
    const auto book = scan_sources(dir->path(), Origin::BookText);
    EXPECT_EQ(book.files.size(), 1u);
}

TEST(Scan, ExtensionAndModulePairFilters) {
    auto dir = support::temp_dir();
    support::put(dir->path() / "notes.txt", "module m; endmodule");
    support::put(dir->path() / "sub/half.v", "module only_open;");
    support::put(dir->path() / "sub/commented.v", "// module x; endmodule\n");
    support::put(dir->path() / "sub/ok.v", "module ok; endmodule");
    const auto r = scan_sources(dir->path(), Origin::RepoTree);
    ASSERT_EQ(r.files.size(), 1u);
    EXPECT_EQ(r.files[0].relative_path, "sub/ok.v");
    EXPECT_EQ(r.report.wrong_extension, 1u);
    EXPECT_EQ(r.report.no_module_pair, 2u);

    const auto book = scan_sources(dir->path(), Origin::BookText);
    EXPECT_EQ(book.files.size(), 2u);  // notes.txt counts for book text
}

TEST(Scan, InvalidUtf8IsKeptLossily) {
    auto dir = support::temp_dir();
    support::put(dir->path() / "x.v", "module m; // caf\xE9\nendmodule");
    const auto r = scan_sources(dir->path(), Origin::RepoTree);
    ASSERT_EQ(r.files.size(), 1u);
    ASSERT_EQ(r.report.lossy.size(), 1u);
    EXPECT_EQ(r.report.lossy[0].replacements, 1u);
}

TEST(Scan, UnreadableRootThrows) {
    EXPECT_THROW(scan_sources("/nonexistent/vereval/root", Origin::RepoTree), IoError);
}

TEST(Shingles, Definition) {
    const auto s = shingle_set("abcd", 2);
    std::vector<std::uint64_t> want{util::hash64("ab"), util::hash64("bc"), util::hash64("cd")};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(s.hashes, want);
}

TEST(Shingles, DegenerateAndDeterministic) {
    EXPECT_EQ(shingle_set("", 3).hashes, std::vector<std::uint64_t>{util::hash64("")});
    EXPECT_EQ(shingle_set("module x", 3), shingle_set("module x", 3));
    EXPECT_EQ(shingle_set("a  b\n\tc", 3), shingle_set("a b c", 3));
}

TEST(Jaccard, Exact) {
    const std::vector<std::uint64_t> abc{1, 2, 3}, bcd{2, 3, 4}, xyz{7, 8, 9};
    EXPECT_DOUBLE_EQ(jaccard_exact(abc, abc), 1.0);
    EXPECT_DOUBLE_EQ(jaccard_exact(abc, xyz), 0.0);
    EXPECT_DOUBLE_EQ(jaccard_exact(abc, bcd), 0.5);
}

TEST(MinHash, IdenticalSetsGiveIdenticalSignatures) {
    const auto s = shingle_set("module m; assign x = y; endmodule", 5);
    const auto a = minhash_signature(s, 256, 42);
    EXPECT_EQ(a, minhash_signature(s, 256, 42));
    EXPECT_DOUBLE_EQ(estimate_jaccard(a, a), 1.0);
}

TEST(MinHash, MismatchedParametersThrow) {
    const auto s = shingle_set("module m; endmodule", 5);
    EXPECT_THROW(estimate_jaccard(minhash_signature(s, 128, 1), minhash_signature(s, 256, 1)), ParameterMismatch);
    EXPECT_THROW(estimate_jaccard(minhash_signature(s, 128, 1), minhash_signature(s, 128, 2)), ParameterMismatch);
    EXPECT_THROW(minhash_signature(ShingleSet{}, 16, 1), std::invalid_argument);
}

TEST(MinHash, AllPositionsDifferGivesZero) {
    MinHashSignature a, b;
    a.mins = {1, 2, 3};
    b.mins = {4, 5, 6};
    EXPECT_DOUBLE_EQ(estimate_jaccard(a, b), 0.0);
}

TEST(MinHash, DisjointSetsEstimateNearZero) {
    const auto [a, b] = support::planted_pair(3, 0, 1000);
    ASSERT_DOUBLE_EQ(jaccard_exact(a, b), 0.0);
    const auto est = estimate_jaccard(minhash_signature(a, 256, 9), minhash_signature(b, 256, 9));
    EXPECT_LT(est, 0.05);
}

TEST(MinHash, HalfOverlapWithinBandAcrossSeeds) {
    const auto [a, b] = support::planted_pair(5, 500, 250);
    ASSERT_DOUBLE_EQ(jaccard_exact(a, b), 0.5);
    int in_band = 0, close = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto est = estimate_jaccard(minhash_signature(a, 256, seed), minhash_signature(b, 256, seed));
        in_band += est >= 0.40 && est <= 0.60;
        close += std::abs(est - 0.5) < 0.1;
    }
    EXPECT_GE(in_band, 198);  // >= 99% of 200
    EXPECT_GE(close, 190);
}

TEST(Dedup, ExactCopyIsDropped) {
    const auto f1 = make_corpus_file(Origin::RepoTree, "f1.v", "module a(input x); assign y = x; endmodule");
    auto f2 = f1;
    f2.relative_path = "f2.v";
    f2.id = "repo:f2.v";
    DedupOptions o;
    o.threshold = 0.8;
    const auto r = deduplicate({f1, f2}, o);
    ASSERT_EQ(r.kept.size(), 1u);
    EXPECT_EQ(r.kept[0].id, "repo:f1.v");
    ASSERT_EQ(r.dropped.size(), 1u);
    EXPECT_EQ(r.dropped[0].duplicate_id, "repo:f2.v");
    EXPECT_EQ(r.dropped[0].kept_id, "repo:f1.v");
    EXPECT_DOUBLE_EQ(r.dropped[0].estimated_similarity, 1.0);
    EXPECT_DOUBLE_EQ(r.dropped[0].exact_similarity, 1.0);
}

TEST(Dedup, BelowThresholdBothKept) {
    // Single-character shingles: {a..f} vs {a,b,c,g,h,i,j}, 3 shared of 10.
    const std::string a = "abcdef";
    const std::string b = "abcghij";
    DedupOptions o;
    o.threshold = 0.8;
    o.shingle_length = 1;
    ASSERT_DOUBLE_EQ(jaccard_exact(shingle_set(a, 1), shingle_set(b, 1)), 0.3);
    const auto r = deduplicate({make_corpus_file(Origin::RepoTree, "a.v", a), make_corpus_file(Origin::RepoTree, "b.v", b)}, o);
    EXPECT_EQ(r.kept.size(), 2u);
    EXPECT_TRUE(r.dropped.empty());
}

TEST(Dedup, ThresholdMustBeInRange) {
    DedupOptions o;
    o.threshold = 0.0;
    EXPECT_THROW(deduplicate({}, o), std::invalid_argument);
    o.threshold = 1.5;
    EXPECT_THROW(deduplicate({}, o), std::invalid_argument);
}

TEST(Dedup, MatchesAllPairsOracle) {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto files = support::synthetic_corpus(seed);
        const auto want = support::oracle_kept_ids(files, 0.85);
        const auto got = deduplicate(files, {});
        std::vector<std::string> ids;
        for (const auto& f : got.kept) ids.push_back(f.id);
        EXPECT_EQ(ids, want) << "seed " << seed;
        EXPECT_EQ(got.kept.size() + got.dropped.size(), files.size());
    }
}

TEST(Dedup, ParallelWorkersGiveSameResult) {
    const auto files = support::synthetic_corpus(9);
    DedupOptions one, many;
    many.workers = 4;
    const auto a = deduplicate(files, one);
    const auto b = deduplicate(files, many);
    ASSERT_EQ(a.kept.size(), b.kept.size());
    for (std::size_t i = 0; i < a.kept.size(); ++i) EXPECT_EQ(a.kept[i].id, b.kept[i].id);
}

TEST(Blocks, ProseAroundOneModule) {
    const std::string mod = "module m(input a);\n  assign b = a;\nendmodule";
    const auto blocks = extract_verilog_blocks("Consider the following design.\n" + mod + "\nIt is simple.");
    ASSERT_EQ(blocks.size(), 1u);
    EXPECT_EQ(blocks[0].text, mod);
    EXPECT_EQ(blocks[0].start_offset, 31u);
}

TEST(Blocks, TwoModulesMatchRegexOracle) {
    const std::string text =
        "Example 1 shows a gate.\n"
        "module and2 (a, b, y);\ninput a, b;\noutput y;\nassign y = a & b;\nendmodule\n"
        "The next example registers it.\n"
        "module dff (clk, d, q);\ninput clk, d;\noutput reg q;\nalways @(posedge clk) q <= d;\nendmodule\n";
    // Pattern from the source text, as written.
    const std::regex reference(R"(module(.*\n*\s*\t*)(\()((?!module)(?!endmodule).*\W*)*endmodule)");
    std::vector<std::string> want;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), reference); it != std::sregex_iterator(); ++it) {
        want.push_back(it->str());
    }
    const auto got = extract_verilog_blocks(text);
    ASSERT_EQ(got.size(), 2u);
    ASSERT_EQ(want.size(), 2u);
    EXPECT_EQ(got[0].text, want[0]);
    EXPECT_EQ(got[1].text, want[1]);
}

TEST(Blocks, RandomTextsMatchLazyRegexOracle) {
    // Oracle: a module keyword, then the shortest run with no module or
    // endmodule keyword, then endmodule. Texts carry no comments or strings.
    const std::regex oracle(R"(\bmodule\b(?:(?!\b(?:end)?module\b)[\s\S])*?\bendmodule\b)");
    const std::vector<std::string> pieces = {"module ", "endmodule ", "x(a);\n", "prose words ", "assign y = a;\n",
                                             "end ", "modules ", "\n"};
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    for (int i = 0; i < 300; ++i) {
        std::string text;
        for (int k = 0; k < 30; ++k) text += pieces[pick(rng)];
        std::vector<std::pair<std::string, std::size_t>> want;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), oracle); it != std::sregex_iterator(); ++it) {
            want.emplace_back(it->str(), static_cast<std::size_t>(it->position()));
        }
        const auto got = extract_verilog_blocks(text);
        ASSERT_EQ(got.size(), want.size()) << text;
        for (std::size_t j = 0; j < got.size(); ++j) {
            EXPECT_EQ(got[j].text, want[j].first);
            EXPECT_EQ(got[j].start_offset, want[j].second);
        }
    }
}

TEST(Blocks, UnterminatedAndCommentedKeywords) {
    EXPECT_TRUE(extract_verilog_blocks("module m(a);\nassign x = 1;\n").empty());
    const auto b = extract_verilog_blocks("module m; // endmodule\nwire w;\nendmodule");
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].text, "module m; // endmodule\nwire w;\nendmodule");
}

TEST(Windows, StrideArithmetic) {
    const auto w = sliding_windows("0123456789", 4, 2, "s");
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& e : w) spans.emplace_back(e.start_offset, e.end_offset);
    const std::vector<std::pair<std::size_t, std::size_t>> want{{0, 4}, {2, 6}, {4, 8}, {6, 10}};
    EXPECT_EQ(spans, want);
    EXPECT_EQ(w.back().window_text, "6789");
}

TEST(Windows, ShortTextClampsAndEmptyGivesNone) {
    const auto w = sliding_windows("abc", 8, 4);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].start_offset, 0u);
    EXPECT_EQ(w[0].end_offset, 3u);
    EXPECT_TRUE(sliding_windows("", 8, 4).empty());
}

TEST(Windows, LastWindowClampedToEnd) {
    const auto w = sliding_windows("0123456789a", 4, 3);  // starts 0,3,6,9; the last is [9,11)
    ASSERT_EQ(w.size(), 4u);
    EXPECT_EQ(w.back().start_offset, 9u);
    EXPECT_EQ(w.back().end_offset, 11u);
    EXPECT_EQ(w.back().window_text, "9a");
}

TEST(Windows, OffsetsCountCodePoints) {
    const auto w = sliding_windows("\xC3\xA9\xC3\xA9\xC3\xA9", 2, 1, "u", 10);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0].window_text, "\xC3\xA9\xC3\xA9");
    EXPECT_EQ(w[1].start_offset, 11u);
    EXPECT_EQ(w[1].end_offset, 13u);
}

TEST(Windows, StrideBounds) {
    EXPECT_THROW(sliding_windows("abc", 2, 3), std::invalid_argument);
    EXPECT_THROW(sliding_windows("abc", 2, 0), std::invalid_argument);
}

TEST(Export, CountsAndRoundTrip) {
    auto dir = support::temp_dir();
    EXPECT_EQ(export_training_set({}, dir->path() / "empty.jsonl"), 0u);
    EXPECT_EQ(std::filesystem::file_size(dir->path() / "empty.jsonl"), 0u);

    const auto ex = sliding_windows("line one\nline \"two\"\n", 8, 6, "repo:x.v");
    ASSERT_EQ(ex.size(), 3u);
    EXPECT_EQ(export_training_set(ex, dir->path() / "t.jsonl"), 3u);
    EXPECT_EQ(read_training_set(dir->path() / "t.jsonl"), ex);
}

TEST(Export, UnwritableTargetLeavesNothing) {
    EXPECT_ANY_THROW(export_training_set({}, "/nonexistent/dir/out.jsonl"));
}

TEST(Build, ThreeFilesOneDuplicateAndDeterministicManifest) {
    auto dir = support::temp_dir();
    const std::string a = "module a(input x, output y);\n  assign y = ~x;\nendmodule\n";
    support::put(dir->path() / "a.v", a);
    support::put(dir->path() / "b.v", "module b(input clk, output reg q);\n  always @(posedge clk) q <= ~q;\nendmodule\n");
    support::put(dir->path() / "copy/a.v", a);
    CorpusBuildOptions o;
    o.sources = {{dir->path(), Origin::RepoTree}};
    o.window = 32;
    o.stride = 16;
    const auto b1 = build_corpus(o);
    EXPECT_EQ(b1.stats.kept, 2u);
    EXPECT_EQ(b1.stats.dropped, 1u);
    EXPECT_GT(b1.stats.examples, 0u);
    EXPECT_EQ(corpus_manifest_json(b1, o), corpus_manifest_json(build_corpus(o), o));
}

TEST(Build, BookTextIsWindowedPerBlock) {
    auto dir = support::temp_dir();
    support::put(dir->path() / "ch1.txt",
                 "Intro prose.\nmodule a; wire w; endmodule\nMore prose.\nmodule b; endmodule\nThe end.");
    CorpusBuildOptions o;
    o.sources = {{dir->path(), Origin::BookText}};
    o.window = 100;
    const auto b = build_corpus(o);
    EXPECT_EQ(b.stats.blocks, 2u);
    ASSERT_EQ(b.examples.size(), 2u);
    EXPECT_EQ(b.examples[0].window_text, "module a; wire w; endmodule");
    EXPECT_EQ(b.examples[0].start_offset, 13u);
    EXPECT_EQ(b.examples[1].window_text, "module b; endmodule");
}
