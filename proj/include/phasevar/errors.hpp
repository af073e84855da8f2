#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phasevar {

/// Precondition violation: shape mismatch, non-finite samples, bad parameters.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or truncated file. Carries the byte offset where parsing failed.
class FormatError : public std::runtime_error {
public:
    enum class Kind { MalformedHeader, TruncatedPayload, DimensionOverflow, NonFiniteSample, Io };

    FormatError(Kind kind, std::size_t offset, const std::string& what)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          kind_(kind), offset_(offset) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// The minimizer's energy blew up even after step-size backoff.
class SolverDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace phasevar
