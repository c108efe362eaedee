#include "vereval/generation/client.hpp"

#include "vereval/generation/mock_provider.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <thread>

namespace vereval::generation {

using Clock = std::chrono::steady_clock;

TokenBucket::TokenBucket(RateLimit limit) : limit_(limit), tokens_(std::max(1.0, limit.burst)), last_(Clock::now()) {}

void TokenBucket::acquire() {
    if (limit_.calls_per_second <= 0.0) return;
    const double cap = std::max(1.0, limit_.burst);
    for (;;) {
        const auto now = Clock::now();
        tokens_ = std::min(cap, tokens_ + std::chrono::duration<double>(now - last_).count() * limit_.calls_per_second);
        last_ = now;
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        const double wait = (1.0 - tokens_) / limit_.calls_per_second;
        std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    }
}

GenerationClient::GenerationClient(RetryPolicy retry)
    : retry_(retry), sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

std::string GenerationClient::register_provider(std::shared_ptr<Provider> provider, RateLimit limit) {
    if (!provider) throw ConfigError("null provider");
    auto id = provider->id();
    std::lock_guard lk(mu_);
    providers_[id] = std::make_shared<Entry>(
        Entry{std::move(provider), std::make_unique<TokenBucket>(limit), std::make_unique<std::mutex>()});
    return id;
}

std::string GenerationClient::register_mock(const std::filesystem::path& fixture, const std::string& id,
                                            std::optional<std::string> fallback) {
    auto p = std::make_shared<MockProvider>(MockFixture::load(fixture), id);
    if (fallback) p->set_fallback(*fallback);
    return register_provider(std::move(p));
}

bool GenerationClient::has_provider(const std::string& id) const {
    std::lock_guard lk(mu_);
    return providers_.contains(id);
}

std::shared_ptr<Provider> GenerationClient::provider(const std::string& id) const {
    std::lock_guard lk(mu_);
    auto it = providers_.find(id);
    if (it == providers_.end()) throw ConfigError("provider '" + id + "' is not registered");
    return it->second->provider;
}

ProviderReply GenerationClient::call_with_retry(Entry& e, const ProviderCall& call, double& latency) {
    std::string log;
    auto backoff = retry_.initial_backoff;
    const int attempts = std::max(1, retry_.attempts);
    for (int attempt = 1;; ++attempt) {
        e.bucket->acquire();
        const auto t0 = Clock::now();
        try {
            auto reply = e.provider->complete(call);
            latency = std::chrono::duration<double>(Clock::now() - t0).count();
            return reply;
        } catch (const TransportError& err) {
            log += fmt::format("\n  attempt {}: {}", attempt, err.what());
            if (!err.retryable() || attempt >= attempts) {
                throw ProviderError(fmt::format("provider '{}' failed after {} attempt(s):{}", e.provider->id(),
                                                attempt, log));
            }
        }
        sleep_(backoff);
        backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) * retry_.multiplier));
    }
}

std::vector<Completion> GenerationClient::generate(const GenerationRequest& request) {
    validate(request);
    std::shared_ptr<Entry> e;
    {
        std::lock_guard lk(mu_);
        auto it = providers_.find(request.provider_id);
        if (it == providers_.end()) throw ConfigError("provider '" + request.provider_id + "' is not registered");
        e = it->second;
    }
    e->provider->check_ready();

    const auto ref = request_id(request);
    const std::size_t reported = e->provider->max_n_per_call();
    const std::size_t cap = reported == 0 ? request.n : reported;  // 0 = no per-call limit
    const std::size_t max_tokens = std::min(request.max_tokens, std::max<std::size_t>(1, e->provider->max_tokens_cap()));

    std::vector<Completion> out;
    out.reserve(request.n);
    std::lock_guard serial(*e->call_mu);
    while (out.size() < request.n) {
        ProviderCall call;
        call.prompt = request.prompt;
        call.temperature = request.temperature;
        call.n = std::min(cap, request.n - out.size());
        call.max_tokens = max_tokens;
        call.system_prompt_mode = request.system_prompt_mode;
        call.first_index = out.size();
        if (request.request_seed) call.seed = *request.request_seed + out.size();

        double latency = 0.0;
        auto reply = call_with_retry(*e, call, latency);
        if (reply.texts.size() != call.n) {
            throw ProviderError(fmt::format("provider '{}' returned {} completions for a call asking {}",
                                            e->provider->id(), reply.texts.size(), call.n));
        }
        for (std::size_t i = 0; i < reply.texts.size(); ++i) {
            Completion c;
            c.request_ref = ref;
            c.index = call.first_index + i;
            c.raw_text = std::move(reply.texts[i]);
            c.latency_seconds = latency;
            c.finish_reason = i < reply.finish_reasons.size() ? reply.finish_reasons[i] : std::string("stop");
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace vereval::generation
