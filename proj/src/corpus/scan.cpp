#include "vereval/corpus/scan.hpp"

#include "vereval/errors.hpp"
#include "vereval/postprocess/lexer.hpp"
#include "vereval/util/digest.hpp"
#include "vereval/util/files.hpp"
#include "vereval/util/text.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace vereval::corpus {

namespace fs = std::filesystem;

std::string_view to_string(Origin o) noexcept {
    return o == Origin::RepoTree ? "repo" : "book";
}

Origin parse_origin(std::string_view s) {
    if (s == "repo") return Origin::RepoTree;
    if (s == "book") return Origin::BookText;
    throw ParseError(fmt::format("unknown origin '{}' (expected repo or book)", s));
}

CorpusFile make_corpus_file(Origin origin, std::string relative_path, std::string text) {
    CorpusFile f;
    f.origin = origin;
    f.id = fmt::format("{}:{}", to_string(origin), relative_path);
    f.relative_path = std::move(relative_path);
    f.char_count = util::code_point_count(text);
    f.content_hash = util::sha256_hex(text);
    f.text = std::move(text);
    return f;
}

bool has_module_pair(std::string_view text) {
    bool seen_module = false;
    for (const auto& t : postprocess::tokenize(text)) {
        if (t.kind != postprocess::TokenKind::Keyword) continue;
        if (t.text == "module") {
            seen_module = true;
        } else if (t.text == "endmodule" && seen_module) {
            return true;
        }
    }
    return false;
}

ScanResult scan_sources(const fs::path& root, Origin origin, const ScanOptions& opts) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw IoError(fmt::format("corpus root '{}' is not a readable directory", root.string()));
    }

    std::optional<std::size_t> limit = opts.max_chars;
    if (!limit && origin == Origin::RepoTree) limit = kRepoMaxChars;

    std::vector<fs::path> paths;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw IoError(fmt::format("cannot read '{}': {}", root.string(), ec.message()));
    for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) break;
        std::error_code fec;
        if (it->is_regular_file(fec)) paths.push_back(it->path());
    }
    std::sort(paths.begin(), paths.end());

    ScanResult result;
    auto& rep = result.report;
    for (const auto& p : paths) {
        ++rep.examined;
        const std::string rel = p.lexically_relative(root).generic_string();
        if (origin == Origin::RepoTree && p.extension() != ".v") {
            ++rep.wrong_extension;
            continue;
        }
        std::string bytes;
        try {
            bytes = util::read_file(p);
        } catch (const IoError& e) {
            rep.unreadable.push_back({rel, e.what()});
            continue;
        }
        auto decoded = util::decode_utf8_lossy(bytes);
        const std::size_t chars = util::code_point_count(decoded.text);
        if (limit && chars >= *limit) {
            ++rep.filtered_large;
            continue;
        }
        if (!has_module_pair(decoded.text)) {
            ++rep.no_module_pair;
            continue;
        }
        if (decoded.replacements > 0) rep.lossy.push_back({rel, decoded.replacements});
        result.files.push_back(make_corpus_file(origin, rel, std::move(decoded.text)));
    }
    return result;
}

}  // namespace vereval::corpus
