#pragma once

#include "vereval/generation/client.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::generation {

/// Canned completions keyed by the SHA-256 hex digest of the prompt.
///
///   {
///     "<digest>": ["text 0", "text 1"],
///     "<digest>": {"completions": [...], "latency_ms": 20,
///                  "temperatures": {"0.5": [...]}},
///     "fallback": "// empty",
///     "latency_ms": 0
///   }
///
/// Completion i of a request is entry[i % size]. A temperature-specific list
/// overrides the default list for that temperature.
struct MockEntry {
    std::vector<std::string> completions;
    std::map<std::int64_t, std::vector<std::string>> by_temperature;  // key: temperature in thousandths
    std::optional<double> latency_ms;
};

struct MockFixture {
    std::map<std::string, MockEntry> entries;
    std::optional<std::string> fallback;
    double latency_ms = 0.0;

    /// Throws ParseError with the line number of the offending text.
    static MockFixture parse(std::string_view text);
    static MockFixture load(const std::filesystem::path& path);

    void add(std::string_view prompt, std::vector<std::string> completions);
    void add_for_temperature(std::string_view prompt, double temperature, std::vector<std::string> completions);
    std::string to_json() const;
    void save(const std::filesystem::path& path) const;
};

class MockProvider : public Provider {
public:
    explicit MockProvider(MockFixture fixture, std::string id = "mock", std::size_t max_n_per_call = 0);

    std::string id() const override { return id_; }
    std::size_t max_n_per_call() const override { return cap_; }
    std::size_t max_tokens_cap() const override { return 1u << 20; }
    ProviderReply complete(const ProviderCall& call) override;

    /// Text returned for prompts missing from the fixture; overrides the fixture's own.
    void set_fallback(std::string text) { fallback_ = std::move(text); }
    std::size_t calls() const noexcept { return calls_; }

    std::string text_for(std::string_view prompt, double temperature, std::size_t index) const;

private:
    MockFixture fixture_;
    std::string id_;
    std::size_t cap_;
    std::optional<std::string> fallback_;
    std::size_t calls_ = 0;
};

}  // namespace vereval::generation
