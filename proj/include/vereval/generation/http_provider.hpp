#pragma once

#include "vereval/generation/client.hpp"

#include <string>

namespace vereval::generation {

enum class ApiStyle { Completions, Chat };

struct HttpProviderConfig {
    std::string id;
    ApiStyle style = ApiStyle::Completions;
    std::string base_url;  // scheme://host[:port]
    std::string path;      // empty = /v1/completions or /v1/chat/completions
    std::string model;
    std::string api_key_env;  // empty = no Authorization header
    std::size_t max_n_per_call = 10;
    std::size_t max_tokens = kDefaultMaxTokens;
    int timeout_seconds = 120;
};

/// OpenAI-compatible text or chat completion endpoint. Chat replies have a
/// surrounding markdown code fence removed.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig cfg);

    std::string id() const override { return cfg_.id; }
    std::size_t max_n_per_call() const override { return cfg_.max_n_per_call; }
    std::size_t max_tokens_cap() const override { return cfg_.max_tokens; }
    void check_ready() const override;
    ProviderReply complete(const ProviderCall& call) override;

    const HttpProviderConfig& config() const noexcept { return cfg_; }

private:
    HttpProviderConfig cfg_;
};

/// Strips one enclosing ``` fence (with optional language tag) if present.
std::string strip_code_fence(const std::string& text);

}  // namespace vereval::generation
