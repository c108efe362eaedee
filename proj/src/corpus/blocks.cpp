#include "vereval/corpus/blocks.hpp"

#include "vereval/postprocess/lexer.hpp"

#include <optional>

namespace vereval::corpus {

std::vector<VerilogBlock> extract_verilog_blocks(std::string_view text) {
    using postprocess::TokenKind;
    std::vector<VerilogBlock> blocks;
    std::optional<std::size_t> open;
    for (const auto& t : postprocess::tokenize(text)) {
        if (t.kind != TokenKind::Keyword) continue;
        if (t.text == "module") {
            open = t.offset;
        } else if (t.text == "endmodule" && open) {
            const std::size_t end = t.offset + t.text.size();
            blocks.push_back({std::string(text.substr(*open, end - *open)), *open});
            open.reset();
        }
    }
    return blocks;
}

}  // namespace vereval::corpus
