#pragma once

#include "vereval/detail.hpp"
#include "vereval/generation/client.hpp"
#include "vereval/harness/evaluator.hpp"
#include "vereval/harness/record_store.hpp"
#include "vereval/problems/problem.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace vereval::harness {

struct SweepConfig {
    std::vector<std::string> problem_ids;
    std::vector<Detail> details{kAllDetails.begin(), kAllDetails.end()};
    std::vector<double> temperatures;
    std::size_t n = 10;
    std::string provider_id;
    unsigned parallelism = 1;
    std::size_t max_tokens = generation::kDefaultMaxTokens;
    generation::SystemPromptMode system_prompt_mode = generation::SystemPromptMode::None;
};

/// Throws ConfigError on empty dimensions, n == 0, parallelism == 0,
/// duplicate entries, or problem ids missing from `set`.
void validate(const SweepConfig& cfg, const problems::ProblemSet& set);

struct SweepProgress {
    std::size_t done = 0;   // records in the store, including earlier runs
    std::size_t total = 0;
    const EvalRecord* last = nullptr;
};

struct SweepSummary {
    std::size_t expected = 0;
    std::size_t already_present = 0;
    std::size_t evaluated = 0;
    std::size_t records = 0;  // store records belonging to this grid after the run
    std::map<EvalStatus, std::size_t> by_status;  // for records evaluated in this run
    bool aborted = false;
    std::string abort_reason;
    double wall_seconds = 0.0;
};

using ProgressFn = std::function<void(const SweepProgress&)>;

/// Generates, post-processes and evaluates every (problem, detail, temperature)
/// cell, appending one record per completion. Records already in the store are
/// skipped, so an interrupted sweep can be rerun. A provider failure stops
/// generation; completed evaluations are still persisted and the summary is
/// marked aborted.
SweepSummary run_sweep(const SweepConfig& cfg, const problems::ProblemSet& set, generation::GenerationClient& client,
                       Evaluator& evaluator, const std::filesystem::path& store, const ProgressFn& progress = {});

}  // namespace vereval::harness
