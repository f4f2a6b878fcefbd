#pragma once

// Internal line tokenizer shared by the edge-list and partition readers.

#include <algorithm>
#include <string>
#include <vector>

namespace spreadrank::detail {

enum class LineKind { Blank, Comment, Data };

// Classifies one raw line and, for data lines, splits it into tokens on
// whitespace runs (commas count as whitespace when comma_is_separator).
inline LineKind split_line(const std::string& raw, const std::string& comment_chars,
                           bool comma_is_separator, std::vector<std::string>& tokens) {
    tokens.clear();
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) return LineKind::Blank;
    if (comment_chars.find(line[start]) != std::string::npos) return LineKind::Comment;
    if (comma_is_separator) std::replace(line.begin(), line.end(), ',', ' ');
    std::size_t pos = start;
    while (pos < line.size()) {
        const std::size_t end = line.find_first_of(" \t", pos);
        if (end == std::string::npos) {
            tokens.push_back(line.substr(pos));
            break;
        }
        if (end > pos) tokens.push_back(line.substr(pos, end - pos));
        pos = end + 1;
    }
    // A comma-only line tokenizes to nothing yet is not blank; report it as
    // data so the caller rejects it with a line number.
    return LineKind::Data;
}

}  // namespace spreadrank::detail
