#pragma once

#include "vereval/detail.hpp"
#include "vereval/harness/record_store.hpp"
#include "vereval/problems/problem.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::scoring {

enum class Predicate { Compiles, PassesTests };

std::string_view to_string(Predicate p) noexcept;
/// Accepts "compiles" and "passes".
Predicate parse_predicate(std::string_view s);
bool satisfies(harness::EvalStatus s, Predicate p) noexcept;

/// A set of problems scored together. With `detail` unset the cell pools
/// over `pooled_details`, and the denominator grows accordingly.
struct Scenario {
    std::string name;
    std::vector<std::string> problem_ids;
    std::optional<Detail> detail;
    Predicate predicate = Predicate::PassesTests;
    std::vector<Detail> pooled_details{kAllDetails.begin(), kAllDetails.end()};

    std::vector<Detail> details() const;
};

/// Throws ValidationError unless problem_ids is non-empty and inside `set`.
void check_scenario(const Scenario& s, const problems::ProblemSet& set);

/// One scenario per difficulty band present in `set`, in ladder order.
std::vector<Scenario> scenarios_by_difficulty(const problems::ProblemSet& set, Predicate p,
                                              std::optional<Detail> detail = std::nullopt);

struct ScoreCell {
    std::string provider_id;
    std::string scenario;
    std::optional<Detail> detail;
    double temperature = 0.0;
    std::size_t n = 0;
    std::size_t numerator = 0;
    std::size_t denominator = 0;
    double score = 0.0;

    bool operator==(const ScoreCell&) const = default;
};

/// Status lookup over a loaded store.
class RecordIndex {
public:
    explicit RecordIndex(const std::vector<harness::EvalRecord>& records);

    const harness::EvalRecord* find(const harness::RecordKey& k) const;
    std::vector<std::string> providers() const;
    /// Mean generation latency over the provider's records, optionally restricted to problems.
    std::optional<double> mean_latency(const std::string& provider,
                                       const std::vector<std::string>& problem_ids = {}) const;

private:
    std::map<harness::RecordKey, harness::EvalRecord> by_key_;
};

/// Plain proportion of the scenario's completions satisfying the predicate.
/// Only indices below n count. Throws CoverageError listing missing records.
ScoreCell pass_at_scenario_n(const RecordIndex& records, const Scenario& scenario, const std::string& provider,
                             double temperature, std::size_t n);

struct BestTemperature {
    double temperature = 0.0;
    ScoreCell cell;
};

/// Highest-scoring temperature; ties go to the lowest temperature.
BestTemperature best_temperature(const RecordIndex& records, const Scenario& scenario, const std::string& provider,
                                 const std::vector<double>& temperatures, std::size_t n);

}  // namespace vereval::scoring
