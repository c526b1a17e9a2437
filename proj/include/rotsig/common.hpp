#pragma once

#include <stdexcept>
#include <string>

namespace rotsig {

// Hard cap on truncation order: memory per series is 2^(N+1) scalars.
inline constexpr int kMaxOrder = 12;

// Default order bound where callers do not choose one explicitly.
inline constexpr int kDefaultOrder = 8;

/// Thrown when a documented precondition is violated by the caller.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what)
        : std::logic_error(what) {}
};

/// Thrown on malformed input data; message carries the location.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what)
        : std::runtime_error(what) {}
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    /// 1-based input line, 0 when not applicable.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

inline void require(bool cond, const char* what) {
    if (!cond) throw ContractViolation(what);
}

inline void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
        throw ContractViolation("truncation order must be in [0, " +
                                std::to_string(kMaxOrder) + "], got " +
                                std::to_string(order));
}

}  // namespace rotsig
