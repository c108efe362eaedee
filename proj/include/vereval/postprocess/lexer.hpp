#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace vereval::postprocess {

enum class TokenKind {
    Keyword,
    Identifier,
    Operator,
    Literal,
    CommentLine,
    CommentBlock,
    StringLit,
    Whitespace,
    Other,
};

std::string_view to_string(TokenKind k) noexcept;

/// A slice of the lexed input. `text` views the caller's buffer; `offset` is a byte index.
struct Token {
    TokenKind kind;
    std::string_view text;
    std::size_t offset;

    bool is_keyword(std::string_view kw) const noexcept { return kind == TokenKind::Keyword && text == kw; }
};

/// Lossless Verilog-2005 token stream: concatenating every token's text yields
/// the input. Only token shapes matter here (no grammar); keywords are never
/// reported inside comments or string literals. An unterminated block comment
/// runs to end of input; an unterminated string stops at end of line.
std::vector<Token> tokenize(std::string_view text);

/// True for reserved words of Verilog-2005.
bool is_verilog_keyword(std::string_view word) noexcept;

struct ModuleBalance {
    int net = 0;        // count(module) - count(endmodule)
    int min_depth = 0;  // lowest running depth seen
    int opened = 0;     // count(module)
};

/// Module/endmodule keyword balance over real (unmasked) keywords.
ModuleBalance module_balance(std::string_view text);

}  // namespace vereval::postprocess
