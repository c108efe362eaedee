#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vereval::generation {

inline constexpr std::array<double, 5> kStandardTemperatures{0.1, 0.3, 0.5, 0.7, 1.0};
inline constexpr std::array<std::size_t, 3> kStandardCompletionCounts{1, 10, 25};
inline constexpr std::size_t kDefaultMaxTokens = 300;

enum class SystemPromptMode { None, UnguidedV0, GuidedV1 };

std::string_view to_string(SystemPromptMode m) noexcept;
SystemPromptMode parse_system_prompt_mode(std::string_view s);
/// Instruction text sent as the system message for chat-style providers.
std::string_view system_prompt_text(SystemPromptMode m) noexcept;

struct GenerationRequest {
    std::string prompt;
    double temperature = 0.5;
    std::size_t n = 1;
    std::size_t max_tokens = kDefaultMaxTokens;
    SystemPromptMode system_prompt_mode = SystemPromptMode::None;
    std::string provider_id;
    std::optional<std::uint64_t> request_seed;
};

/// Throws std::invalid_argument on n == 0, max_tokens == 0 or temperature outside [0, 1].
void validate(const GenerationRequest& r);

/// Short stable id for a request: SHA-256 over its fields, first 16 hex digits.
std::string request_id(const GenerationRequest& r);

struct Completion {
    std::string request_ref;
    std::size_t index = 0;
    std::string raw_text;
    double latency_seconds = 0.0;
    std::string finish_reason;
};

}  // namespace vereval::generation
