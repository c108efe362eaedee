#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::harness {

/// Compile and simulate command templates. Placeholders expanded per call:
///   {sources}  candidate file then testbench file, as separate arguments
///   {image}    path of the executable image the compile step must produce
///   {output}   directory holding the image (the per-evaluation work dir)
///   {top}      top-level testbench module name
struct ToolchainConfig {
    std::string name;
    std::vector<std::string> compile_command;
    std::vector<std::string> simulate_command;
    std::string image_name = "sim.out";
    std::string top_module = "tb";
    std::vector<std::string> required_programs;  // checked by preflight
};

ToolchainConfig icarus_toolchain();
/// Uses the bundled build script found in `script_dir`.
ToolchainConfig verilator_toolchain(const std::filesystem::path& script_dir);

/// Directory holding bundled toolchain scripts (compile-time default, or the
/// VEREVAL_TOOLCHAIN_DIR environment variable).
std::filesystem::path default_toolchain_dir();

/// "icarus", "verilator" or "auto" (icarus when both programs are on PATH,
/// else verilator). Throws ConfigError for other names.
ToolchainConfig resolve_toolchain(std::string_view name);

/// Throws ToolNotFound naming every missing program.
void preflight(const ToolchainConfig& tc);

/// Stable text identifying the configuration, used in cache keys.
std::string fingerprint(const ToolchainConfig& tc);

/// Expands placeholders; "{sources}" must stand alone and becomes N arguments.
std::vector<std::string> expand_command(const std::vector<std::string>& templ,
                                        const std::map<std::string, std::vector<std::string>>& values);

}  // namespace vereval::harness
