#ifndef SDCPSE_ERRORS_HPP_
#define SDCPSE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdcpse {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed files, invalid parameters, contract violations.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A numerical procedure failed (degenerate geometry, solver divergence, ...).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Point has no neighbors within the cutoff radius.
class IsolatedPointError : public NumericError {
public:
    explicit IsolatedPointError(std::size_t point)
        : NumericError("isolated point: index " + std::to_string(point) +
                       " has no neighbors within the cutoff radius"),
          point_index(point) {}
    std::size_t point_index;
};

// Moment system is rank-deficient in a way that makes the requested
// derivative unrecoverable (e.g. all points on a line, derivative
// requested in the perpendicular direction).
class DegenerateDistributionError : public NumericError {
public:
    explicit DegenerateDistributionError(std::size_t point, const std::string& detail = "")
        : NumericError("degenerate collocation point distribution at point " +
                       std::to_string(point) + (detail.empty() ? "" : ": " + detail)),
          point_index(point) {}
    std::size_t point_index;
};

class SingularMatrixError : public NumericError {
public:
    explicit SingularMatrixError(const std::string& msg) : NumericError(msg) {}
};

// Iterative solver did not reach the requested tolerance.
class IterativeSolveError : public NumericError {
public:
    IterativeSolveError(double residual, std::size_t iterations)
        : NumericError("iterative solver failed to converge: residual " +
                       std::to_string(residual) + " after " +
                       std::to_string(iterations) + " iterations"),
          residual(residual), iterations(iterations) {}
    double residual;
    std::size_t iterations;
};

// Shape tensor eigenvalues came out unusably complex.
class IllConditionedShapeError : public NumericError {
public:
    explicit IllConditionedShapeError(std::size_t point)
        : NumericError("ill-conditioned shape tensor at point " + std::to_string(point)),
          point_index(point) {}
    std::size_t point_index;
};

// Field blew up during time integration.
class BlowUpError : public NumericError {
public:
    explicit BlowUpError(std::size_t step)
        : NumericError("non-finite field value during time integration at step " +
                       std::to_string(step)),
          step_index(step) {}
    std::size_t step_index;
};

class ParseError : public ConfigError {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : ConfigError(path + ":" + std::to_string(line) + ": " + what),
          line_number(line) {}
    std::size_t line_number;
};

}  // namespace sdcpse

#endif
