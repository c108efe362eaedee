#pragma once

#include "vereval/detail.hpp"
#include "vereval/harness/outcome.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

namespace vereval::harness {

/// Temperatures are compared in thousandths to avoid float key drift.
std::int64_t temperature_key(double t) noexcept;

struct RecordKey {
    std::string provider_id;
    std::string problem_id;
    Detail detail = Detail::L;
    std::int64_t temperature_milli = 0;
    std::size_t completion_index = 0;

    auto operator<=>(const RecordKey&) const = default;
};

struct EvalRecord {
    std::string problem_id;
    Detail detail = Detail::L;
    double temperature = 0.0;
    std::size_t completion_index = 0;
    std::string provider_id;
    EvalOutcome outcome;
    double gen_latency_seconds = 0.0;
    double compile_seconds = 0.0;
    double sim_seconds = 0.0;
    bool truncation_applied = false;
    bool synthesized_close = false;

    RecordKey key() const;
};

/// Append-only JSONL file. The first line is a format header; each further line
/// is one record. A torn final line (crash mid-write) is discarded on open.
class RecordStore {
public:
    /// Creates the file (with header) when missing. Throws ParseError on a foreign header.
    explicit RecordStore(std::filesystem::path path);

    /// Records already on disk, first occurrence per key.
    const std::vector<EvalRecord>& existing() const noexcept { return existing_; }

    /// Thread-safe; each record is flushed as one complete line.
    void append(const EvalRecord& r);

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::vector<EvalRecord> existing_;
    std::mutex mu_;
    std::ofstream out_;
};

/// Reads every record; duplicate keys keep the first. Throws ParseError/IoError.
std::vector<EvalRecord> load_records(const std::filesystem::path& path);

std::string record_to_json_line(const EvalRecord& r);
EvalRecord record_from_json_line(const std::string& line);

}  // namespace vereval::harness
