#pragma once

#include "vereval/harness/evaluator.hpp"
#include "vereval/problems/problem.hpp"

#include <string>
#include <vector>

namespace vereval::problems {

struct ReferenceCheck {
    std::string problem_id;
    harness::EvalStatus status = harness::EvalStatus::CompileError;
    std::size_t mismatches = 0;
    std::string log;  // compiler diagnostics or simulator output when not Success
    double seconds = 0.0;
};

struct ValidationReport {
    std::vector<ReferenceCheck> checks;

    std::size_t passed() const noexcept;
    bool all_passed() const noexcept { return passed() == checks.size(); }
};

/// Source evaluated for a reference file: the file itself when it already
/// declares its module, else the high-detail prompt followed by the body.
postprocess::CandidateSource reference_candidate(const Problem& p);

/// Evaluates every reference against its testbench. Failures are reported,
/// never thrown; only tool or I/O failures escape.
ValidationReport validate_references(const ProblemSet& set, harness::Evaluator& evaluator);

}  // namespace vereval::problems
