#include "vereval/corpus/manifest.hpp"

#include "vereval/corpus/blocks.hpp"
#include "vereval/util/text.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>

namespace vereval::corpus {

using ojson = nlohmann::ordered_json;

CorpusBuild build_corpus(const CorpusBuildOptions& opts) {
    CorpusBuild b;
    std::vector<CorpusFile> all;
    for (std::size_t si = 0; si < opts.sources.size(); ++si) {
        const auto& src = opts.sources[si];
        auto scan = scan_sources(src.root, src.origin);
        if (opts.sources.size() > 1) {
            // Relative paths can repeat across roots; qualify ids by source index.
            for (auto& f : scan.files) f.id = fmt::format("{}:{}/{}", to_string(f.origin), si, f.relative_path);
        }
        const auto& r = scan.report;
        b.stats.examined += r.examined;
        b.stats.wrong_extension += r.wrong_extension;
        b.stats.no_module_pair += r.no_module_pair;
        b.stats.filtered_large += r.filtered_large;
        b.stats.unreadable += r.unreadable.size();
        b.stats.lossy += r.lossy.size();
        for (const auto& f : scan.files) all.push_back(f);
        scan.files.clear();
        b.scans.push_back(std::move(scan));
    }

    b.dedup = deduplicate(std::move(all), opts.dedup);
    b.stats.kept = b.dedup.kept.size();
    b.stats.dropped = b.dedup.dropped.size();

    const std::size_t stride = opts.stride == 0 ? std::max<std::size_t>(1, opts.window / 2) : opts.stride;
    for (const auto& f : b.dedup.kept) {
        if (f.origin == Origin::RepoTree) {
            auto w = sliding_windows(f.text, opts.window, stride, f.id);
            b.examples.insert(b.examples.end(), w.begin(), w.end());
            continue;
        }
        const auto blocks = extract_verilog_blocks(f.text);
        b.stats.blocks += blocks.size();
        for (const auto& blk : blocks) {
            const std::size_t base = util::code_point_count(std::string_view(f.text).substr(0, blk.start_offset));
            auto w = sliding_windows(blk.text, opts.window, stride, f.id, base);
            b.examples.insert(b.examples.end(), w.begin(), w.end());
        }
    }
    b.stats.examples = b.examples.size();
    return b;
}

std::string corpus_manifest_json(const CorpusBuild& build, const CorpusBuildOptions& opts) {
    ojson m;
    m["format"] = "vereval-corpus-manifest";
    m["version"] = 1;
    ojson params;
    params["threshold"] = opts.dedup.threshold;
    params["num_hashes"] = opts.dedup.num_hashes;
    params["shingle_length"] = opts.dedup.shingle_length;
    params["seed"] = opts.dedup.seed;
    params["window"] = opts.window;
    params["stride"] = opts.stride == 0 ? std::max<std::size_t>(1, opts.window / 2) : opts.stride;
    m["parameters"] = params;

    const auto& s = build.stats;
    m["stats"] = ojson{{"examined", s.examined},         {"wrong_extension", s.wrong_extension},
                       {"no_module_pair", s.no_module_pair}, {"filtered_large", s.filtered_large},
                       {"unreadable", s.unreadable},     {"lossy", s.lossy},
                       {"kept", s.kept},                 {"dropped", s.dropped},
                       {"blocks", s.blocks},             {"examples", s.examples}};

    ojson kept = ojson::array();
    for (const auto& f : build.dedup.kept) {
        kept.push_back(ojson{{"id", f.id}, {"chars", f.char_count}, {"sha256", f.content_hash}});
    }
    m["kept"] = std::move(kept);

    ojson dropped = ojson::array();
    for (const auto& d : build.dedup.dropped) {
        dropped.push_back(ojson{{"id", d.duplicate_id},
                                {"duplicate_of", d.kept_id},
                                {"estimated_similarity", d.estimated_similarity},
                                {"exact_similarity", d.exact_similarity}});
    }
    m["dropped"] = std::move(dropped);

    ojson skipped = ojson::array();
    for (std::size_t i = 0; i < build.scans.size(); ++i) {
        const auto& root = opts.sources[i].root.generic_string();
        for (const auto& u : build.scans[i].report.unreadable) {
            skipped.push_back(ojson{{"root", root}, {"path", u.relative_path}, {"reason", u.reason}});
        }
        for (const auto& l : build.scans[i].report.lossy) {
            skipped.push_back(
                ojson{{"root", root}, {"path", l.relative_path}, {"reason", "lossy-decoded"}, {"replacements", l.replacements}});
        }
    }
    m["skip_report"] = std::move(skipped);
    return m.dump(2) + "\n";
}

}  // namespace vereval::corpus
