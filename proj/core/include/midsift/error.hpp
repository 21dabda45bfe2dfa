#ifndef MIDSIFT_ERROR_HPP
#define MIDSIFT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace midsift {

// Precondition violations on arguments (bad grid, bad knot order, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed external input. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Numerical breakdown: degenerate fits, non-convergent eigen solves.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File system failures; the message always carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace midsift

#endif // MIDSIFT_ERROR_HPP
