#pragma once

#include <charconv>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hyperkan/error.hpp"

namespace hyperkan::detail {

/// Line-oriented whitespace tokenizer that remembers 1-based line/column
/// positions for ParseError messages.
class TextReader {
public:
    struct Token {
        std::string_view text;
        std::size_t column;
    };

    explicit TextReader(std::istream& in) : in_(in) {}

    /// Reads the next line; returns false at end of input. Blank lines are
    /// returned too (with no tokens) unless `skip_blank` is set.
    bool next_line(bool skip_blank = false) {
        while (std::getline(in_, line_)) {
            ++line_no_;
            if (!line_.empty() && line_.back() == '\r') line_.pop_back();
            split();
            if (!skip_blank || !tokens_.empty()) return true;
        }
        tokens_.clear();
        return false;
    }

    const std::vector<Token>& tokens() const noexcept { return tokens_; }
    std::size_t line() const noexcept { return line_no_; }

    [[noreturn]] void fail(const std::string& message, std::size_t column = 1) const {
        throw ParseError(message, line_no_, column);
    }

    template <typename Int>
    Int parse_int(const Token& tok) const {
        Int value{};
        const auto* end = tok.text.data() + tok.text.size();
        const auto [ptr, ec] = std::from_chars(tok.text.data(), end, value);
        if (ec != std::errc{} || ptr != end) {
            fail("expected an integer, found '" + std::string(tok.text) + "'", tok.column);
        }
        return value;
    }

    double parse_double(const Token& tok,
                        std::chars_format fmt = std::chars_format::general) const {
        double value = 0.0;
        const auto* end = tok.text.data() + tok.text.size();
        const auto [ptr, ec] = std::from_chars(tok.text.data(), end, value, fmt);
        if (ec != std::errc{} || ptr != end) {
            fail("expected a real number, found '" + std::string(tok.text) + "'", tok.column);
        }
        return value;
    }

private:
    void split() {
        tokens_.clear();
        std::size_t i = 0;
        while (i < line_.size()) {
            while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t')) ++i;
            if (i >= line_.size()) break;
            const std::size_t start = i;
            while (i < line_.size() && line_[i] != ' ' && line_[i] != '\t') ++i;
            tokens_.push_back({std::string_view(line_).substr(start, i - start), start + 1});
        }
    }

    std::istream& in_;
    std::string line_;
    std::vector<Token> tokens_;
    std::size_t line_no_ = 0;
};

}  // namespace hyperkan::detail
