#pragma once

// Shared line splitting for the assembly front ends.

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

namespace clinger::asm_detail {

struct AsmLine {
    int number = 0;
    std::string label;                // without the trailing colon
    std::vector<std::string> tokens;  // tokens[0] is the lowercased mnemonic
};

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

inline std::vector<AsmLine> split_lines(const std::string& text) {
    std::vector<AsmLine> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ts(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (ts >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;

        AsmLine line;
        line.number = number;
        if (tokens.front().size() > 1 && tokens.front().back() == ':') {
            line.label = tokens.front().substr(0, tokens.front().size() - 1);
            tokens.erase(tokens.begin());
        }
        if (!tokens.empty()) tokens.front() = lower(tokens.front());
        line.tokens = std::move(tokens);
        out.push_back(std::move(line));
    }
    return out;
}

inline bool parse_long(const std::string& s, long* out) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) return false;
        *out = v;
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace clinger::asm_detail
