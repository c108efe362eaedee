#include "vereval/postprocess/lexer.hpp"

#include <algorithm>
#include <array>

namespace vereval::postprocess {

namespace {

// IEEE 1364-2005 reserved words, sorted.
constexpr std::array<std::string_view, 124> kKeywords = {
    "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1", "case", "casex",
    "casez", "cell", "cmos", "config", "deassign", "default", "defparam", "design", "disable", "edge",
    "else", "end", "endcase", "endconfig", "endfunction", "endgenerate", "endmodule", "endprimitive",
    "endspecify", "endtable", "endtask", "event", "for", "force", "forever", "fork", "function",
    "generate", "genvar", "highz0", "highz1", "if", "ifnone", "incdir", "include", "initial", "inout",
    "input", "instance", "integer", "join", "large", "liblist", "library", "localparam", "macromodule",
    "medium", "module", "nand", "negedge", "nmos", "nor", "noshowcancelled", "not", "notif0", "notif1",
    "or", "output", "parameter", "pmos", "posedge", "primitive", "pull0", "pull1", "pulldown", "pullup",
    "pulsestyle_ondetect", "pulsestyle_onevent", "rcmos", "real", "realtime", "reg", "release", "repeat",
    "rnmos", "rpmos", "rtran", "rtranif0", "rtranif1", "scalared", "showcancelled", "signed", "small",
    "specify", "specparam", "strong0", "strong1", "supply0", "supply1", "table", "task", "time", "tran",
    "tranif0", "tranif1", "tri", "tri0", "tri1", "triand", "trior", "trireg", "unsigned", "use", "uwire",
    "vectored", "wait", "wand", "weak0", "weak1", "while", "wire", "wor", "xnor", "xor",
};

static_assert(std::is_sorted(kKeywords.begin(), kKeywords.end()));

constexpr std::array<std::string_view, 20> kMultiCharOps = {
    "<<<", ">>>", "===", "!==", "==", "!=", "<=", ">=", "&&", "||",
    "<<",  ">>",  "**",  "~&",  "~|", "~^", "^~", "->", "+:", "-:",
};

constexpr std::string_view kSingleCharOps = "+-*/%<>=!&|^~?:;,.()[]{}#@";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9') || c == '$'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_base_char(char c) {
    return c == 'b' || c == 'B' || c == 'o' || c == 'O' || c == 'd' || c == 'D' || c == 'h' || c == 'H';
}
bool is_based_digit(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F') || c == 'x' || c == 'X' ||
           c == 'z' || c == 'Z' || c == '?' || c == '_';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : s_(src) {}

    std::vector<Token> run() {
        std::vector<Token> toks;
        toks.reserve(s_.size() / 3 + 1);
        while (i_ < s_.size()) {
            const std::size_t start = i_;
            const TokenKind kind = next();
            toks.push_back({kind, s_.substr(start, i_ - start), start});
        }
        return toks;
    }

private:
    char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

    TokenKind next() {
        const char c = peek();
        if (is_space(c)) {
            while (i_ < s_.size() && is_space(s_[i_])) ++i_;
            return TokenKind::Whitespace;
        }
        if (c == '/' && peek(1) == '/') {
            while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            return TokenKind::CommentLine;
        }
        if (c == '/' && peek(1) == '*') {
            const auto close = s_.find("*/", i_ + 2);
            i_ = close == std::string_view::npos ? s_.size() : close + 2;
            return TokenKind::CommentBlock;
        }
        if (c == '"') {
            ++i_;
            while (i_ < s_.size() && s_[i_] != '"' && s_[i_] != '\n') {
                if (s_[i_] == '\\' && i_ + 1 < s_.size() && s_[i_ + 1] != '\n') ++i_;
                ++i_;
            }
            if (i_ < s_.size() && s_[i_] == '"') ++i_;
            return TokenKind::StringLit;
        }
        if (is_ident_start(c)) {
            const std::size_t start = i_;
            while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
            return is_verilog_keyword(s_.substr(start, i_ - start)) ? TokenKind::Keyword : TokenKind::Identifier;
        }
        if (c == '\\' && peek(1) != '\0' && !is_space(peek(1))) {
            while (i_ < s_.size() && !is_space(s_[i_])) ++i_;
            return TokenKind::Identifier;
        }
        if (c == '$' && is_ident_char(peek(1))) {
            ++i_;
            while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
            return TokenKind::Identifier;
        }
        if (c == '`' && is_ident_start(peek(1))) {
            ++i_;
            while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
            return TokenKind::Other;
        }
        if (is_digit(c)) {
            lex_number();
            return TokenKind::Literal;
        }
        if (c == '\'' && based_literal_follows(i_)) {
            lex_based_suffix();
            return TokenKind::Literal;
        }
        for (auto op : kMultiCharOps) {
            if (s_.substr(i_, op.size()) == op) {
                i_ += op.size();
                return TokenKind::Operator;
            }
        }
        if (kSingleCharOps.find(c) != std::string_view::npos) {
            ++i_;
            return TokenKind::Operator;
        }
        // One UTF-8 code point (or stray byte).
        ++i_;
        while (i_ < s_.size() && (static_cast<unsigned char>(s_[i_]) & 0xC0) == 0x80) ++i_;
        return TokenKind::Other;
    }

    bool based_literal_follows(std::size_t at) const {
        std::size_t k = at + 1;
        if (k < s_.size() && (s_[k] == 's' || s_[k] == 'S')) ++k;
        if (k < s_.size() && is_base_char(s_[k])) return true;
        // SystemVerilog-style unbased fill literals '0 '1 'x 'z
        const char f = k == at + 1 && k < s_.size() ? s_[k] : '\0';
        return f == '0' || f == '1' || f == 'x' || f == 'X' || f == 'z' || f == 'Z';
    }

    void lex_based_suffix() {
        ++i_;  // '
        if (peek() == 's' || peek() == 'S') ++i_;
        if (is_base_char(peek())) ++i_;
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) {
            // whitespace between base and digits is legal, but only keep it if digits follow
            std::size_t k = i_;
            while (k < s_.size() && (s_[k] == ' ' || s_[k] == '\t')) ++k;
            if (k < s_.size() && is_based_digit(s_[k])) i_ = k; else break;
        }
        while (i_ < s_.size() && is_based_digit(s_[i_])) ++i_;
    }

    void lex_number() {
        while (i_ < s_.size() && (is_digit(s_[i_]) || s_[i_] == '_')) ++i_;
        if (peek() == '.' && is_digit(peek(1))) {
            ++i_;
            while (i_ < s_.size() && (is_digit(s_[i_]) || s_[i_] == '_')) ++i_;
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
            i_ += 2;
            while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
        }
        if (peek() == '\'' && based_literal_follows(i_)) lex_based_suffix();
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

std::string_view to_string(TokenKind k) noexcept {
    switch (k) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Identifier: return "Identifier";
        case TokenKind::Operator: return "Operator";
        case TokenKind::Literal: return "Literal";
        case TokenKind::CommentLine: return "CommentLine";
        case TokenKind::CommentBlock: return "CommentBlock";
        case TokenKind::StringLit: return "StringLit";
        case TokenKind::Whitespace: return "Whitespace";
        case TokenKind::Other: return "Other";
    }
    return "?";
}

bool is_verilog_keyword(std::string_view word) noexcept {
    return std::binary_search(kKeywords.begin(), kKeywords.end(), word);
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

ModuleBalance module_balance(std::string_view text) {
    ModuleBalance b;
    for (const auto& t : tokenize(text)) {
        if (t.kind != TokenKind::Keyword) continue;
        if (t.text == "module") {
            ++b.net;
            ++b.opened;
        } else if (t.text == "endmodule") {
            --b.net;
            b.min_depth = std::min(b.min_depth, b.net);
        }
    }
    return b;
}

}  // namespace vereval::postprocess
