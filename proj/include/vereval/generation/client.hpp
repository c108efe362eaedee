#pragma once

#include "vereval/errors.hpp"
#include "vereval/generation/request.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vereval::generation {

/// One provider round trip; n never exceeds the provider's per-call cap.
struct ProviderCall {
    std::string prompt;
    double temperature = 0.5;
    std::size_t n = 1;
    std::size_t max_tokens = kDefaultMaxTokens;
    SystemPromptMode system_prompt_mode = SystemPromptMode::None;
    std::size_t first_index = 0;  // index of the first completion within the whole request
    std::optional<std::uint64_t> seed;
};

struct ProviderReply {
    std::vector<std::string> texts;
    std::vector<std::string> finish_reasons;  // may be empty
};

/// Raised by providers for a failed round trip. Only retryable failures
/// (transport errors, 5xx responses) are attempted again.
class TransportError : public ProviderError {
public:
    TransportError(const std::string& what, bool retryable) : ProviderError(what), retryable_(retryable) {}
    bool retryable() const noexcept { return retryable_; }

private:
    bool retryable_;
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string id() const = 0;
    virtual std::size_t max_n_per_call() const = 0;  // 0 = no limit
    virtual std::size_t max_tokens_cap() const = 0;
    /// Throws ConfigError when credentials are missing; called before any call.
    virtual void check_ready() const {}
    virtual ProviderReply complete(const ProviderCall& call) = 0;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{1000};
    double multiplier = 2.0;
};

struct RateLimit {
    double calls_per_second = 0.0;  // 0 = unlimited
    double burst = 1.0;
};

/// Token bucket; acquire() blocks until a token is available.
class TokenBucket {
public:
    explicit TokenBucket(RateLimit limit);
    void acquire();

private:
    RateLimit limit_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
};

class GenerationClient {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit GenerationClient(RetryPolicy retry = {});

    /// Returns the provider id. Replaces a provider registered under the same id.
    std::string register_provider(std::shared_ptr<Provider> provider, RateLimit limit = {});
    /// Registers a fixture-backed mock provider under `id`.
    std::string register_mock(const std::filesystem::path& fixture, const std::string& id = "mock",
                              std::optional<std::string> fallback = std::nullopt);

    bool has_provider(const std::string& id) const;
    std::shared_ptr<Provider> provider(const std::string& id) const;

    /// Exactly request.n completions with indices 0..n-1. Splits the request
    /// into calls of at most the provider's cap; each completion carries the
    /// latency of the call that produced it. Throws ConfigError (unknown
    /// provider, missing credentials) or ProviderError after failed retries.
    std::vector<Completion> generate(const GenerationRequest& request);

    /// Replaces the backoff sleep; used by tests.
    void set_sleeper(Sleeper s) { sleep_ = std::move(s); }

private:
    struct Entry {
        std::shared_ptr<Provider> provider;
        std::unique_ptr<TokenBucket> bucket;
        std::unique_ptr<std::mutex> call_mu;
    };

    ProviderReply call_with_retry(Entry& e, const ProviderCall& call, double& latency);

    RetryPolicy retry_;
    Sleeper sleep_;
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<Entry>> providers_;
};

}  // namespace vereval::generation
