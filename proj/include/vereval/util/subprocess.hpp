#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vereval::util {

struct ProcessOptions {
    std::filesystem::path cwd;                    // empty = inherit
    std::optional<std::chrono::milliseconds> timeout;
    std::size_t output_limit = 1 << 20;           // per stream; excess is dropped
    std::vector<std::string> extra_env;           // "KEY=VALUE" entries appended to environ
};

struct ProcessResult {
    int exit_code = -1;         // valid when exited
    bool exited = false;
    int term_signal = 0;        // nonzero when killed by a signal
    bool timed_out = false;
    bool spawn_failed = false;  // binary missing or not executable
    std::string out;
    std::string err;
    bool out_truncated = false;
    double wall_seconds = 0.0;

    bool ok() const noexcept { return exited && exit_code == 0 && !timed_out; }
};

/// Runs argv[0] (PATH-searched) without a shell. The child gets its own process
/// group so a timeout kills every descendant. Never throws on child failure.
ProcessResult run_process(const std::vector<std::string>& argv, const ProcessOptions& opts = {});

/// Resolves a program name against PATH; absolute or relative paths are checked as-is.
std::optional<std::filesystem::path> find_program(const std::string& name);

}  // namespace vereval::util
