#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::corpus {

struct VerilogBlock {
    std::string text;
    std::size_t start_offset = 0;  // byte offset into the scanned text

    bool operator==(const VerilogBlock&) const = default;
};

/// Every region from a `module` keyword to the first following `endmodule`
/// with no module/endmodule keyword in between, in document order. A `module`
/// seen before the region closes restarts it; a trailing unterminated region
/// is dropped. Keywords in comments and strings do not count.
std::vector<VerilogBlock> extract_verilog_blocks(std::string_view text);

}  // namespace vereval::corpus
