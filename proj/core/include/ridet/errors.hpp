#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ridet {

/// Input could not be parsed. Carries the 1-based line number when the
/// failure is tied to a specific record (0 means the file as a whole).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Window extraction or normalization could not proceed.
class ExtractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Training could not start or finish.
class TrainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ridet
