#include "vereval/harness/record_store.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/files.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace vereval::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "vereval-eval-records";
constexpr int kVersion = 1;
constexpr std::size_t kStoredTextLimit = 4000;

std::string header_line() {
    json h = json::object();
    h["format"] = kFormat;
    h["version"] = kVersion;
    return h.dump();
}

std::string clip(const std::string& s) { return s.size() > kStoredTextLimit ? s.substr(0, kStoredTextLimit) : s; }

void check_header(const std::string& line, const fs::path& path) {
    try {
        const auto h = json::parse(line);
        if (h.at("format").get<std::string>() == kFormat && h.at("version").get<int>() == kVersion) return;
    } catch (const json::exception&) {
    }
    throw ParseError("'" + path.string() + "' is not an evaluation record store", 1);
}

struct Parsed {
    std::vector<EvalRecord> records;
    std::uintmax_t valid_bytes = 0;  // length of the prefix made of complete lines
    bool empty = true;
};

Parsed parse_store(const fs::path& path) {
    const auto text = util::read_file(path);
    Parsed p;
    p.empty = text.empty();
    std::set<RecordKey> seen;
    std::size_t pos = 0;
    std::size_t lineno = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string::npos) break;  // torn tail
        const auto line = text.substr(pos, nl - pos);
        ++lineno;
        pos = nl + 1;
        if (lineno == 1) {
            check_header(line, path);
        } else if (!line.empty()) {
            EvalRecord r;
            try {
                r = record_from_json_line(line);
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " in '" + path.string() + "'", lineno);
            }
            if (seen.insert(r.key()).second) p.records.push_back(std::move(r));
        }
        p.valid_bytes = pos;
    }
    return p;
}

}  // namespace

std::int64_t temperature_key(double t) noexcept { return std::llround(t * 1000.0); }

RecordKey EvalRecord::key() const {
    return {provider_id, problem_id, detail, temperature_key(temperature), completion_index};
}

std::string record_to_json_line(const EvalRecord& r) {
    json j = json::object();
    j["provider"] = r.provider_id;
    j["problem"] = r.problem_id;
    j["detail"] = std::string(to_string(r.detail));
    j["temperature"] = r.temperature;
    j["index"] = r.completion_index;
    j["status"] = std::string(to_string(r.outcome.status));
    j["mismatches"] = r.outcome.mismatches;
    j["gen_latency_s"] = r.gen_latency_seconds;
    j["compile_s"] = r.compile_seconds;
    j["sim_s"] = r.sim_seconds;
    j["truncated"] = r.truncation_applied;
    j["synthesized_close"] = r.synthesized_close;
    j["compile_log"] = clip(r.outcome.compile_stderr);
    j["sim_log"] = clip(r.outcome.sim_stdout);
    // Invalid UTF-8 from tool output must not abort the write.
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

EvalRecord record_from_json_line(const std::string& line) {
    try {
        const auto j = json::parse(line);
        EvalRecord r;
        r.provider_id = j.at("provider").get<std::string>();
        r.problem_id = j.at("problem").get<std::string>();
        r.detail = parse_detail(j.at("detail").get<std::string>());
        r.temperature = j.at("temperature").get<double>();
        r.completion_index = j.at("index").get<std::size_t>();
        r.outcome.status = parse_status(j.at("status").get<std::string>());
        r.outcome.mismatches = j.value("mismatches", std::size_t{0});
        r.gen_latency_seconds = j.value("gen_latency_s", 0.0);
        r.compile_seconds = j.value("compile_s", 0.0);
        r.sim_seconds = j.value("sim_s", 0.0);
        r.truncation_applied = j.value("truncated", false);
        r.synthesized_close = j.value("synthesized_close", false);
        r.outcome.compile_stderr = j.value("compile_log", std::string());
        r.outcome.sim_stdout = j.value("sim_log", std::string());
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad evaluation record: ") + e.what());
    }
}

std::vector<EvalRecord> load_records(const fs::path& path) {
    if (!fs::exists(path)) throw IoError("record store '" + path.string() + "' does not exist");
    return parse_store(path).records;
}

RecordStore::RecordStore(fs::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    if (fs::exists(path_)) {
        auto p = parse_store(path_);
        if (p.empty) {
            util::write_file_atomic(path_, header_line() + "\n");
        } else {
            if (p.valid_bytes == 0) check_header(util::read_file(path_), path_);
            if (p.valid_bytes != fs::file_size(path_)) fs::resize_file(path_, p.valid_bytes);
            existing_ = std::move(p.records);
        }
    } else {
        util::write_file_atomic(path_, header_line() + "\n");
    }
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) throw IoError("cannot append to '" + path_.string() + "'");
}

void RecordStore::append(const EvalRecord& r) {
    const auto line = record_to_json_line(r) + "\n";
    std::lock_guard lk(mu_);
    out_ << line;
    out_.flush();
    if (!out_) throw IoError("write to '" + path_.string() + "' failed");
}

}  // namespace vereval::harness
