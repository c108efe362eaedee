#include "vereval/postprocess/truncate.hpp"

#include "vereval/errors.hpp"
#include "vereval/postprocess/lexer.hpp"

#include <fmt/format.h>

namespace vereval::postprocess {

namespace {

// Scans `joined` for the cut. Only tokens ending past `body_start` may cut, and
// offsets in the result are relative to body_start.
Truncation cut_body(std::string_view joined, std::size_t body_start, int depth) {
    const auto body = joined.substr(body_start);
    std::size_t nested_start = 0;  // offset of the module keyword that went 1 -> 2
    for (const auto& t : tokenize(joined)) {
        if (t.kind != TokenKind::Keyword) continue;
        const std::size_t end = t.offset + t.text.size();
        if (t.text == "module") {
            if (++depth == 2 && end > body_start) nested_start = t.offset > body_start ? t.offset - body_start : 0;
        } else if (t.text == "endmodule") {
            if (--depth == 0 && end > body_start) {
                const std::size_t cut = end - body_start;
                return {std::string(body.substr(0, cut)), false, cut < body.size()};
            }
        }
    }
    if (depth > 1) {
        // An unclosed module started inside the body; drop it so one endmodule balances.
        return {std::string(body.substr(0, nested_start)), true, true};
    }
    return {std::string(body), true, false};
}

bool ends_in_line_comment(std::string_view prompt) {
    const auto toks = tokenize(prompt);
    return !toks.empty() && toks.back().kind == TokenKind::CommentLine;
}

}  // namespace

Truncation truncate_completion(std::string_view raw) { return cut_body(raw, 0, 1); }

Truncation truncate_in_context(std::string_view prompt, std::string_view raw) {
    std::string joined(prompt);
    if (ends_in_line_comment(prompt) && !raw.empty()) joined.push_back('\n');
    const auto body_start = joined.size();
    joined.append(raw);
    return cut_body(joined, body_start, 0);
}

CandidateSource assemble(std::string_view prompt, std::string_view body, bool synthesized_close) {
    const auto pb = module_balance(prompt);
    if (pb.net != 1 || pb.min_depth < 0) {
        throw ContractError(fmt::format("prompt must leave exactly one module open (net depth {})", pb.net));
    }

    CandidateSource c;
    c.synthesized_close = synthesized_close;
    c.source_text.reserve(prompt.size() + body.size() + 12);
    c.source_text.append(prompt);
    // A prompt ending in a line comment without a newline would swallow the body.
    if (ends_in_line_comment(prompt) && !body.empty()) {
        c.source_text.push_back('\n');
    }
    c.source_text.append(body);
    if (synthesized_close) {
        const auto bt = tokenize(c.source_text);
        if (!bt.empty() && bt.back().kind == TokenKind::CommentBlock &&
            (bt.back().text.size() < 4 || !bt.back().text.ends_with("*/"))) {
            c.source_text.append("*/");
        }
        c.source_text.append("\nendmodule\n");
    }

    const auto sb = module_balance(c.source_text);
    if (sb.net != 0 || sb.min_depth < 0 || sb.opened < 1) {
        throw ContractError(fmt::format("assembled source is unbalanced (net module depth {})", sb.net));
    }
    return c;
}

CandidateSource build_candidate(std::string_view prompt, std::string_view raw_completion) {
    auto t = truncate_in_context(prompt, raw_completion);
    auto c = assemble(prompt, t.body, t.synthesized_close);
    c.truncation_applied = t.discarded_tail;
    return c;
}

}  // namespace vereval::postprocess
