#include "vereval/generation/request.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/digest.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace vereval::generation {

std::string_view to_string(SystemPromptMode m) noexcept {
    switch (m) {
        case SystemPromptMode::None: return "none";
        case SystemPromptMode::UnguidedV0: return "unguided";
        case SystemPromptMode::GuidedV1: return "guided";
    }
    return "?";
}

SystemPromptMode parse_system_prompt_mode(std::string_view s) {
    if (s == "none") return SystemPromptMode::None;
    if (s == "unguided") return SystemPromptMode::UnguidedV0;
    if (s == "guided") return SystemPromptMode::GuidedV1;
    throw ParseError("unknown system prompt mode '" + std::string(s) + "' (expected none, unguided or guided)");
}

std::string_view system_prompt_text(SystemPromptMode m) noexcept {
    switch (m) {
        case SystemPromptMode::None: return "";
        case SystemPromptMode::UnguidedV0:
            return "You are a Verilog autocomplete engine. Continue the code exactly where the input stops.";
        case SystemPromptMode::GuidedV1:
            return "You are a programming assistant for Verilog hardware design. Continue the given module "
                   "from where the input stops. Reply with Verilog code only, without restating the prompt "
                   "and without explanations, and finish the module with endmodule.";
    }
    return "";
}

void validate(const GenerationRequest& r) {
    if (r.n == 0) throw std::invalid_argument("generation request needs n >= 1");
    if (r.max_tokens == 0) throw std::invalid_argument("generation request needs max_tokens >= 1");
    if (!(r.temperature >= 0.0 && r.temperature <= 1.0)) {
        throw std::invalid_argument(fmt::format("temperature {} is outside [0, 1]", r.temperature));
    }
}

std::string request_id(const GenerationRequest& r) {
    util::Sha256Builder b;
    b.field(r.provider_id)
        .field(r.prompt)
        .field(fmt::format("{:.3f}", r.temperature))
        .field(std::to_string(r.n))
        .field(std::to_string(r.max_tokens))
        .field(to_string(r.system_prompt_mode))
        .field(r.request_seed ? std::to_string(*r.request_seed) : std::string("-"));
    return b.hex().substr(0, 16);
}

}  // namespace vereval::generation
