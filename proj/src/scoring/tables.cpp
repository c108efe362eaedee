#include "vereval/scoring/tables.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/files.hpp"
#include "vereval/util/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>

namespace vereval::scoring {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("unterminated quote in score CSV", lineno);
    out.push_back(std::move(cur));
    return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t lineno) {
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad number '" + s + "' in score CSV", lineno);
    return v;
}

std::string pad(const std::string& s, std::size_t w, bool right) {
    if (s.size() >= w) return s;
    return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
}

}  // namespace

std::string_view to_string(TableLayout l) noexcept { return l == TableLayout::CompileTable ? "compile" : "functional"; }

TableLayout parse_layout(std::string_view s) {
    if (s == "compile") return TableLayout::CompileTable;
    if (s == "functional") return TableLayout::FunctionalTable;
    throw ParseError("unknown table layout '" + std::string(s) + "' (expected compile or functional)");
}

std::string cells_to_csv(const std::vector<ScoreCell>& cells) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& c : cells) {
        out += fmt::format("{},{},{},{},{},{},{},{:.17g}\n", csv_field(c.provider_id), csv_field(c.scenario),
                           c.detail ? std::string(to_string(*c.detail)) : std::string("pooled"), c.temperature, c.n,
                           c.numerator, c.denominator, c.score);
    }
    return out;
}

std::vector<ScoreCell> parse_score_csv(std::string_view text) {
    const auto lines = util::split_lines(text);
    if (lines.empty() || lines.front() != kCsvHeader) throw ParseError("score CSV header mismatch", 1);
    std::vector<ScoreCell> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto lineno = i + 1;
        if (lines[i].empty()) continue;
        const auto f = split_csv_line(lines[i], lineno);
        if (f.size() != 8) throw ParseError("score CSV row needs 8 fields", lineno);
        ScoreCell c;
        c.provider_id = f[0];
        c.scenario = f[1];
        if (f[2] != "pooled") {
            try {
                c.detail = parse_detail(f[2]);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
        }
        c.temperature = parse_number<double>(f[3], lineno);
        c.n = parse_number<std::size_t>(f[4], lineno);
        c.numerator = parse_number<std::size_t>(f[5], lineno);
        c.denominator = parse_number<std::size_t>(f[6], lineno);
        c.score = parse_number<double>(f[7], lineno);
        out.push_back(std::move(c));
    }
    return out;
}

TableResult build_tables(const RecordIndex& records, const problems::ProblemSet& set, const TableOptions& opts) {
    if (opts.providers.empty()) throw ConfigError("no providers selected for the report");
    if (opts.temperatures.empty()) throw ConfigError("no temperatures selected for the report");
    const auto predicate =
        opts.predicate.value_or(opts.layout == TableLayout::CompileTable ? Predicate::Compiles : Predicate::PassesTests);

    std::vector<Scenario> columns;
    if (opts.layout == TableLayout::CompileTable) {
        columns = scenarios_by_difficulty(set, predicate);
    } else {
        for (const auto& base : scenarios_by_difficulty(set, predicate)) {
            for (auto d : kAllDetails) {
                auto s = base;
                s.detail = d;
                columns.push_back(std::move(s));
            }
        }
    }
    for (const auto& c : columns) check_scenario(c, set);

    TableResult t;
    std::vector<std::vector<std::string>> rows;
    for (const auto& provider : opts.providers) {
        std::vector<std::string> row{provider};
        for (const auto& col : columns) {
            auto best = best_temperature(records, col, provider, opts.temperatures, opts.n);
            row.push_back(fmt::format("{:.3f} (t={:g})", best.cell.score, best.temperature));
            t.cells.push_back(std::move(best.cell));
        }
        if (opts.layout == TableLayout::FunctionalTable) {
            const auto lat = records.mean_latency(provider, set.ids());
            t.latency.emplace_back(provider, lat);
            row.push_back(lat ? fmt::format("{:.3f}", *lat) : std::string("n/a"));
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::string> header{"provider"};
    for (const auto& col : columns) {
        header.push_back(col.detail ? col.name + "/" + std::string(to_string(*col.detail)) : col.name);
    }
    if (opts.layout == TableLayout::FunctionalTable) header.push_back("latency_s");

    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
    }
    const auto render = [&](const std::vector<std::string>& r) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) line += "  ";
            line += pad(r[c], width[c], c > 0);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        return line + "\n";
    };

    t.text = fmt::format("Pass@(scenario*n) at n={}, predicate={}, layout={}\n", opts.n, to_string(predicate),
                         to_string(opts.layout));
    t.text += render(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    t.text += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    for (const auto& r : rows) t.text += render(r);
    t.text += "\nEach cell is the proportion of completions satisfying the predicate at the best temperature\n"
              "(ties go to the lowest temperature). Denominator: problems x n";
    t.text += opts.layout == TableLayout::CompileTable ? " x 3 detail levels (L, M, H pooled).\n" : ".\n";
    if (opts.layout == TableLayout::FunctionalTable) {
        t.text += "latency_s is the mean generation latency per completion over all records of the provider.\n";
    }
    t.text += "Simulation timeouts are counted as simulation errors.\n";

    t.csv = cells_to_csv(t.cells);
    if (opts.layout == TableLayout::FunctionalTable) {
        t.latency_csv = "provider,mean_gen_latency_s\n";
        for (const auto& [p, lat] : t.latency) {
            t.latency_csv += csv_field(p) + "," + (lat ? fmt::format("{:.17g}", *lat) : std::string()) + "\n";
        }
    }
    return t;
}

TableFiles write_tables(const TableResult& t, const std::filesystem::path& stem) {
    TableFiles f;
    if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
    f.text = stem.string() + ".txt";
    f.csv = stem.string() + ".csv";
    util::write_file_atomic(f.text, t.text);
    util::write_file_atomic(f.csv, t.csv);
    if (!t.latency_csv.empty()) {
        f.latency_csv = stem.string() + "_latency.csv";
        util::write_file_atomic(f.latency_csv, t.latency_csv);
    }
    return f;
}

}  // namespace vereval::scoring
