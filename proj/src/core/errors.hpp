#pragma once

#include <stdexcept>
#include <string>

namespace lenv {

// Malformed input text (rational literals, segment files, chain files).
// line is 1-based when the source was a line-oriented file, 0 otherwise.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace lenv
