#include "vereval/harness/outcome.hpp"

#include "vereval/errors.hpp"

#include <algorithm>
#include <charconv>

namespace vereval::harness {

std::string_view to_string(EvalStatus s) noexcept {
    switch (s) {
        case EvalStatus::Success: return "Success";
        case EvalStatus::CompileError: return "CompileError";
        case EvalStatus::SimulationError: return "SimulationError";
        case EvalStatus::Incorrect: return "Incorrect";
    }
    return "?";
}

std::string_view display_name(EvalStatus s) noexcept {
    switch (s) {
        case EvalStatus::Success: return "Success!";
        case EvalStatus::CompileError: return "Compile Error";
        case EvalStatus::SimulationError: return "Simulation Error";
        case EvalStatus::Incorrect: return "Incorrect";
    }
    return "?";
}

EvalStatus parse_status(std::string_view s) {
    for (auto st : {EvalStatus::Success, EvalStatus::CompileError, EvalStatus::SimulationError, EvalStatus::Incorrect}) {
        if (s == to_string(st)) return st;
    }
    throw ParseError("unknown evaluation status '" + std::string(s) + "'");
}

TestbenchReport parse_testbench_output(std::string_view out) {
    TestbenchReport r;
    std::size_t pos = 0;
    while (pos < out.size()) {
        auto nl = out.find('\n', pos);
        if (nl == std::string_view::npos) nl = out.size();
        const auto line = out.substr(pos, nl - pos);
        pos = nl + 1;

        if (const auto at = line.find(kSummaryPrefix); at != std::string_view::npos) {
            const auto digits = line.substr(at + kSummaryPrefix.size());
            std::size_t k = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
            if (ec == std::errc() && ptr != digits.data()) r.summary = k;
            continue;
        }
        if (line.find(kMismatchMarker) != std::string_view::npos) ++r.mismatch_lines;
    }
    return r;
}

EvalOutcome classify(bool compile_ok, const std::optional<SimulationResult>& sim) {
    if (compile_ok != sim.has_value()) {
        throw ContractError("simulation result must be present exactly when compilation succeeded");
    }
    EvalOutcome o;
    if (!compile_ok) {
        o.status = EvalStatus::CompileError;
        return o;
    }
    o.sim_stdout = sim->stdout_text;
    if (!sim->ran_to_completion || sim->timed_out) {
        o.status = EvalStatus::SimulationError;
        return o;
    }
    o.mismatches = sim->mismatches;
    o.status = sim->mismatches == 0 ? EvalStatus::Success : EvalStatus::Incorrect;
    return o;
}

}  // namespace vereval::harness
