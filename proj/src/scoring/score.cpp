#include "vereval/scoring/score.hpp"

#include "vereval/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace vereval::scoring {

using harness::EvalStatus;

std::string_view to_string(Predicate p) noexcept { return p == Predicate::Compiles ? "compiles" : "passes"; }

Predicate parse_predicate(std::string_view s) {
    if (s == "compiles") return Predicate::Compiles;
    if (s == "passes") return Predicate::PassesTests;
    throw ParseError("unknown predicate '" + std::string(s) + "' (expected compiles or passes)");
}

bool satisfies(EvalStatus s, Predicate p) noexcept {
    return p == Predicate::Compiles ? s != EvalStatus::CompileError : s == EvalStatus::Success;
}

std::vector<Detail> Scenario::details() const {
    if (detail) return {*detail};
    return pooled_details;
}

void check_scenario(const Scenario& s, const problems::ProblemSet& set) {
    if (s.problem_ids.empty()) throw ValidationError("scenario '" + s.name + "' has no problems");
    if (!s.detail && s.pooled_details.empty()) throw ValidationError("scenario '" + s.name + "' pools no details");
    for (const auto& id : s.problem_ids) {
        if (!set.find(id)) throw ValidationError("scenario '" + s.name + "' names unknown problem '" + id + "'");
    }
}

std::vector<Scenario> scenarios_by_difficulty(const problems::ProblemSet& set, Predicate p,
                                              std::optional<Detail> detail) {
    std::vector<Scenario> out;
    if (set.problems.empty()) return out;
    for (auto d : problems::difficulty_ladder(set.problems.front().set)) {
        Scenario s;
        s.name = std::string(problems::to_string(d));
        s.detail = detail;
        s.predicate = p;
        for (const auto& prob : set.problems) {
            if (prob.difficulty == d) s.problem_ids.push_back(prob.id);
        }
        if (!s.problem_ids.empty()) out.push_back(std::move(s));
    }
    return out;
}

RecordIndex::RecordIndex(const std::vector<harness::EvalRecord>& records) {
    for (const auto& r : records) by_key_.try_emplace(r.key(), r);
}

const harness::EvalRecord* RecordIndex::find(const harness::RecordKey& k) const {
    const auto it = by_key_.find(k);
    return it == by_key_.end() ? nullptr : &it->second;
}

std::vector<std::string> RecordIndex::providers() const {
    std::set<std::string> s;
    for (const auto& [k, r] : by_key_) s.insert(k.provider_id);
    return {s.begin(), s.end()};
}

std::optional<double> RecordIndex::mean_latency(const std::string& provider,
                                                const std::vector<std::string>& problem_ids) const {
    const std::set<std::string> wanted(problem_ids.begin(), problem_ids.end());
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [k, r] : by_key_) {
        if (k.provider_id != provider) continue;
        if (!wanted.empty() && !wanted.contains(k.problem_id)) continue;
        sum += r.gen_latency_seconds;
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

ScoreCell pass_at_scenario_n(const RecordIndex& records, const Scenario& scenario, const std::string& provider,
                             double temperature, std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    ScoreCell cell;
    cell.provider_id = provider;
    cell.scenario = scenario.name;
    cell.detail = scenario.detail;
    cell.temperature = temperature;
    cell.n = n;

    const auto tkey = harness::temperature_key(temperature);
    std::vector<std::string> gaps;
    std::size_t missing = 0;
    for (const auto& pid : scenario.problem_ids) {
        for (auto d : scenario.details()) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto* r = records.find({provider, pid, d, tkey, i});
                ++cell.denominator;
                if (!r) {
                    if (gaps.size() < 12) gaps.push_back(fmt::format("{}/{}#{}", pid, to_string(d), i));
                    ++missing;
                    continue;
                }
                cell.numerator += satisfies(r->outcome.status, scenario.predicate);
            }
        }
    }
    if (missing > 0) {
        std::string list;
        for (const auto& g : gaps) list += (list.empty() ? "" : ", ") + g;
        if (missing > gaps.size()) list += ", ...";
        throw CoverageError(fmt::format("scenario '{}' at t={} n={} for provider '{}' is missing {} record(s): {}",
                                        scenario.name, temperature, n, provider, missing, list));
    }
    cell.score = static_cast<double>(cell.numerator) / static_cast<double>(cell.denominator);
    return cell;
}

BestTemperature best_temperature(const RecordIndex& records, const Scenario& scenario, const std::string& provider,
                                 const std::vector<double>& temperatures, std::size_t n) {
    if (temperatures.empty()) throw std::invalid_argument("best_temperature needs at least one temperature");
    auto temps = temperatures;
    std::sort(temps.begin(), temps.end());
    std::optional<BestTemperature> best;
    for (double t : temps) {
        auto cell = pass_at_scenario_n(records, scenario, provider, t, n);
        // Exact comparison of the two fractions.
        if (!best || cell.numerator * best->cell.denominator > best->cell.numerator * cell.denominator) {
            best = BestTemperature{t, std::move(cell)};
        }
    }
    return *best;
}

}  // namespace vereval::scoring
