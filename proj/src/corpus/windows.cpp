#include "vereval/corpus/windows.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/files.hpp"
#include "vereval/util/text.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace vereval::corpus {

using nlohmann::json;

std::vector<TrainingExample> sliding_windows(std::string_view text, std::size_t window, std::size_t stride,
                                             const std::string& source_id, std::size_t base_offset) {
    if (window == 0 || stride == 0 || stride > window) {
        throw std::invalid_argument("sliding window needs 1 <= stride <= window");
    }
    const auto offs = util::code_point_offsets(text);
    const std::size_t len = offs.size() - 1;
    std::vector<TrainingExample> out;
    if (len == 0) return out;
    for (std::size_t start = 0;; start += stride) {
        const std::size_t end = std::min(start + window, len);
        out.push_back({source_id, std::string(text.substr(offs[start], offs[end] - offs[start])),
                       base_offset + start, base_offset + end});
        if (end == len) break;
    }
    return out;
}

std::size_t export_training_set(const std::vector<TrainingExample>& examples, const std::filesystem::path& out) {
    util::AtomicFileWriter w(out);
    for (const auto& ex : examples) {
        json j = json::object();
        j["source_id"] = ex.source_id;
        j["start"] = ex.start_offset;
        j["end"] = ex.end_offset;
        j["text"] = ex.window_text;
        w.stream() << j.dump() << '\n';
    }
    w.commit();
    return examples.size();
}

std::vector<TrainingExample> read_training_set(const std::filesystem::path& in) {
    std::ifstream f(in, std::ios::binary);
    if (!f) throw IoError("cannot open '" + in.string() + "'");
    std::vector<TrainingExample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const auto j = json::parse(line);
            out.push_back({j.at("source_id").get<std::string>(), j.at("text").get<std::string>(),
                           j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()});
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad training record: ") + e.what(), lineno);
        }
    }
    return out;
}

}  // namespace vereval::corpus
