#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biposs {

/// Syntax error in a formula string or an input file. `line` is 0 when the
/// text did not come from a file; `column` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when a declaration exceeds the configured variable limit.
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace biposs
