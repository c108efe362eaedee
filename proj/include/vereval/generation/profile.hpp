#pragma once

#include "vereval/generation/client.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace vereval::generation {

/// Provider profile as written in a run config:
///   {"id": "mock", "kind": "mock", "fixture": "fixture.json", "fallback": "...", "max_n_per_call": 0}
///   {"id": "codegen", "kind": "completions" | "chat", "base_url": "http://host:8000",
///    "path": "/v1/completions", "model": "...", "api_key_env": "CODEGEN_KEY",
///    "max_n_per_call": 10, "max_tokens": 300, "requests_per_second": 0, "timeout_seconds": 120}
struct ProviderProfile {
    std::shared_ptr<Provider> provider;
    RateLimit rate_limit;
};

/// Relative fixture paths resolve against `base_dir`. Throws ConfigError.
ProviderProfile make_provider(const nlohmann::json& profile, const std::filesystem::path& base_dir);

}  // namespace vereval::generation
