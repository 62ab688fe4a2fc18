#ifndef POPDYN_ERRORS_HPP
#define POPDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace popdyn {

/// Base for operational failures (as opposed to programming errors, which
/// use std::invalid_argument / std::logic_error). `kind()` is a stable
/// machine-readable tag; the CLI prints it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Fixed-step integration was asked to run with a step that violates the
/// stability bound while internal refinement is disabled.
class GridTooCoarseError : public Error {
public:
    explicit GridTooCoarseError(const std::string& msg) : Error("grid-too-coarse", msg) {}
};

/// The view-rate curve has not decayed below its maximum by the end of the
/// requested horizon, so the peak cannot be bracketed.
class HorizonTooShortError : public Error {
public:
    explicit HorizonTooShortError(const std::string& msg) : Error("horizon-too-short", msg) {}
};

/// A view trace unusable for the requested operation (all zero, too short).
class DegenerateTraceError : public Error {
public:
    explicit DegenerateTraceError(const std::string& msg) : Error("degenerate-trace", msg) {}
};

/// Entropy window longer than the trace.
class WindowTooLongError : public Error {
public:
    explicit WindowTooLongError(const std::string& msg) : Error("window-too-long", msg) {}
};

/// Entropy window with zero total views; the day distribution is undefined.
class AllZeroWindowError : public Error {
public:
    explicit AllZeroWindowError(const std::string& msg) : Error("all-zero-window", msg) {}
};

/// Malformed trace CSV; message carries the 1-based line number.
class CsvParseError : public Error {
public:
    CsvParseError(const std::string& source, long line, const std::string& msg)
        : Error("csv-parse", source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Linearized per-slot probability left [0, 1] with the exact-exponential
/// form disabled.
class ProbabilityOverflowError : public Error {
public:
    explicit ProbabilityOverflowError(const std::string& msg)
        : Error("probability-overflow", msg) {}
};

}  // namespace popdyn

#endif  // POPDYN_ERRORS_HPP
