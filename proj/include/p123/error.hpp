#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace p123 {

/// Malformed graph or labelling text. `line()` is 1-based, 0 when not tied to a line.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The input graph has a connected component isomorphic to K2.
class not_nice_error : public std::invalid_argument {
public:
    not_nice_error() : std::invalid_argument("graph is not nice") {}
};

/// A caller broke an operation's documented precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The construction reached a state its correctness argument rules out.
/// Never caught internally: it means the implementation or the argument is wrong.
class unreachable_case : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace p123
