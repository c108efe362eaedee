#pragma once

#include "vereval/scoring/score.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vereval::scoring {

enum class TableLayout { CompileTable, FunctionalTable };

std::string_view to_string(TableLayout l) noexcept;
TableLayout parse_layout(std::string_view s);  // "compile" or "functional"

struct TableOptions {
    TableLayout layout = TableLayout::FunctionalTable;
    std::vector<std::string> providers;  // rows, in this order; must be non-empty
    std::vector<double> temperatures;    // candidates for the best-temperature pick
    std::size_t n = 10;
    std::optional<Predicate> predicate;  // default: Compiles for CompileTable, PassesTests otherwise
};

struct TableResult {
    std::vector<ScoreCell> cells;  // provider-major, then column order
    std::vector<std::pair<std::string, std::optional<double>>> latency;  // FunctionalTable only
    std::string text;
    std::string csv;
    std::string latency_csv;  // empty for CompileTable
};

/// CompileTable: one column per difficulty, pooled over details.
/// FunctionalTable: difficulty x {L, M, H} columns plus mean generation latency.
/// Every cell reports its best temperature. Throws ConfigError on an empty
/// provider list, CoverageError on missing records.
TableResult build_tables(const RecordIndex& records, const problems::ProblemSet& set, const TableOptions& opts);

struct TableFiles {
    std::filesystem::path text;
    std::filesystem::path csv;
    std::filesystem::path latency_csv;  // empty when not written
};

/// Writes <stem>.txt, <stem>.csv and, for the functional layout, <stem>_latency.csv.
TableFiles write_tables(const TableResult& t, const std::filesystem::path& stem);

inline constexpr std::string_view kCsvHeader = "provider,scenario,detail,temperature,n,numerator,denominator,score";

std::string cells_to_csv(const std::vector<ScoreCell>& cells);
/// Throws ParseError with the line number on malformed input.
std::vector<ScoreCell> parse_score_csv(std::string_view text);

}  // namespace vereval::scoring
