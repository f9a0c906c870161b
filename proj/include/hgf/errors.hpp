#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgf {

// Bad scenario/grid/solver parameters.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite value appeared where the math guarantees finiteness.
struct NumericFault : std::runtime_error {
    double t = 0.0;
    long cell = -1;
    NumericFault(const std::string& msg, double t_, long cell_)
        : std::runtime_error(msg), t(t_), cell(cell_) {}
};

// Evaluation requested outside the range where a quantity exists
// (e^phi overflow, Riccati denominator past its root, ...).
struct BlowupRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller violated an API precondition (mismatched lengths, non-uniform
// snapshot spacing, too few samples for a fit).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form solution evaluated outside its validity region.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expression syntax error; offset is a byte position into the source text.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"),
          offset(off) {}
};

} // namespace hgf
