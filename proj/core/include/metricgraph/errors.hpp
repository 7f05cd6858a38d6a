#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metricgraph {

// Incompatible matrix/table orders.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data violates a documented precondition (zero-norm row, asymmetric
// matrix, empty corpus, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A scalar argument is out of range (eps <= 0, max_order < 1, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Iterative solver did not reach the requested residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_residual(achieved) {}
    double achieved_residual;
};

// Divergent integral (Lebesgue concentration with q <= 1).
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown entity identifier.
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file or configuration; carries the 1-based line when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, std::size_t line_no = 0)
        : std::runtime_error(msg), line(line_no) {}
    std::size_t line;
};

}  // namespace metricgraph
