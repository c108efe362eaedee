#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace vereval::harness {

enum class EvalStatus { Success, CompileError, SimulationError, Incorrect };

/// Stable identifier used in record stores: "Success", "CompileError", ...
std::string_view to_string(EvalStatus s) noexcept;
/// Judge-style label: "Success!", "Compile Error", "Simulation Error", "Incorrect".
std::string_view display_name(EvalStatus s) noexcept;
EvalStatus parse_status(std::string_view s);

/// Testbench stdout protocol: one line containing kMismatchMarker per failing
/// check, then a final summary line "TB_RESULT mismatches=<k>".
inline constexpr std::string_view kMismatchMarker = "MISMATCH";
inline constexpr std::string_view kSummaryPrefix = "TB_RESULT mismatches=";

struct TestbenchReport {
    std::size_t mismatch_lines = 0;
    std::optional<std::size_t> summary;  // value of the last summary line
};

TestbenchReport parse_testbench_output(std::string_view out);

struct SimulationResult {
    bool ran_to_completion = false;  // summary line present and no timeout
    bool timed_out = false;
    int exit_code = 0;
    std::size_t mismatches = 0;      // valid iff ran_to_completion
    std::string stdout_text;
    std::string problem;             // why the run did not complete
    double seconds = 0.0;
};

struct EvalOutcome {
    EvalStatus status = EvalStatus::CompileError;
    std::size_t mismatches = 0;  // meaningful for Success / Incorrect
    std::string compile_stderr;
    std::string sim_stdout;

    bool operator==(const EvalOutcome&) const = default;
};

/// CompileError without a successful compile; SimulationError when the run
/// timed out or ended without a summary; Incorrect on any mismatch; else Success.
/// Throws ContractError when `sim` is present without a compile or vice versa.
EvalOutcome classify(bool compile_ok, const std::optional<SimulationResult>& sim);

}  // namespace vereval::harness
