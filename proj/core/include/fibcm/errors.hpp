#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fibcm {

// Base class for all toolkit errors so callers can catch a single type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid inputs: bad construction data, violated preconditions, bad files.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Expression syntax error; offset is the byte position in the input text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Newton solve aborted: no admissible descent step was found, so the
// positive-density cone would have been left. Carries the residuals seen
// so far for diagnosis.
class SolveError : public Error {
public:
    SolveError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}
    const std::vector<double>& residual_history() const { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace fibcm
