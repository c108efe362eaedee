#pragma once

#include "vereval/corpus/manifest.hpp"
#include "vereval/detail.hpp"
#include "vereval/generation/request.hpp"
#include "vereval/harness/toolchain.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vereval::cli {

/// JSON run configuration. Every key is optional; relative paths resolve
/// against the directory holding the config file.
///
///   {
///     "toolchain": "auto" | "icarus" | "verilator" |
///                  {"name": "...", "compile": [...], "simulate": [...], "image": "sim.out", "top": "tb"},
///     "providers": [ {profile}, ... ],
///     "default_provider": "mock",
///     "sweep": {"temperatures": [...], "n": 10, "details": ["L","M","H"], "parallelism": 4,
///               "timeout_seconds": 10, "max_tokens": 300, "system_prompt": "none"},
///     "paths": {"problems": "...", "store": "...", "scratch": "...", "reports": "..."},
///     "corpus": {"roots": [{"path": "...", "origin": "repo"}], "out": "...",
///                "threshold": 0.85, "window": 2048, "stride": 1024}
///   }
struct RunConfig {
    std::filesystem::path base_dir;

    std::string toolchain_name = "auto";
    std::optional<harness::ToolchainConfig> custom_toolchain;

    std::vector<nlohmann::json> providers;
    std::string default_provider;

    std::vector<double> temperatures{generation::kStandardTemperatures.begin(), generation::kStandardTemperatures.end()};
    std::size_t n = 10;
    std::vector<Detail> details{kAllDetails.begin(), kAllDetails.end()};
    unsigned parallelism = 4;
    double timeout_seconds = 10.0;
    std::size_t max_tokens = generation::kDefaultMaxTokens;
    generation::SystemPromptMode system_prompt = generation::SystemPromptMode::None;

    std::filesystem::path problems;
    std::filesystem::path store = "records.jsonl";
    std::filesystem::path scratch;
    std::filesystem::path reports = "reports";

    std::vector<corpus::CorpusSource> corpus_roots;
    std::filesystem::path corpus_out = "corpus_out";
    double dedup_threshold = 0.85;
    std::size_t window = 2048;
    std::size_t stride = 0;
};

/// Defaults: the shipped Problem Set I and the bundled toolchain scripts.
RunConfig default_run_config();

/// Throws ConfigError (bad structure or values) or IoError.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

harness::ToolchainConfig toolchain_of(const RunConfig& cfg);

/// The provider named explicitly, else the configured default. Throws ConfigError.
const nlohmann::json& provider_profile(const RunConfig& cfg, const std::string& id);

std::vector<double> parse_temperature_list(const std::string& s);
std::vector<Detail> parse_detail_list(const std::string& s);

}  // namespace vereval::cli
