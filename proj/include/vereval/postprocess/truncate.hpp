#pragma once

#include "vereval/detail.hpp"

#include <string>
#include <string_view>

namespace vereval::postprocess {

struct Truncation {
    std::string body;
    bool synthesized_close = false;  // no closing endmodule found; assemble() appends one
    bool discarded_tail = false;     // text after the cut was dropped
};

/// Cuts a raw completion right after the `endmodule` that closes the module
/// opened by the prompt. Module nesting starts at depth 1; `begin`/`end`
/// blocks never end the body. Keywords in comments and strings are ignored.
Truncation truncate_completion(std::string_view raw);

/// Same cut, but tokens are read across the prompt/completion seam, so a
/// completion that fuses with the prompt's last token is still cut correctly.
/// Module depth is counted from the start of the prompt.
Truncation truncate_in_context(std::string_view prompt, std::string_view raw);

struct CandidateSource {
    std::string problem_id;
    Detail detail = Detail::L;
    std::string completion_ref;
    std::string source_text;
    bool truncation_applied = false;
    bool synthesized_close = false;
};

/// prompt + body, plus a closing `endmodule` when synthesized_close is set.
/// Throws ContractError unless the prompt leaves exactly one module open and the
/// result is balanced.
CandidateSource assemble(std::string_view prompt, std::string_view body, bool synthesized_close);

/// Convenience: truncate_in_context then assemble, filling the bookkeeping flags.
CandidateSource build_candidate(std::string_view prompt, std::string_view raw_completion);

}  // namespace vereval::postprocess
