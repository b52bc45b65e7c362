#ifndef DIMER_ERRORS_HPP
#define DIMER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dimer {

// Bad user-supplied parameter (odd cycle length, torus side < 3, ...).
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input structurally unusable (e.g. disconnected graph where connectivity
// is required).
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exhaustive routine asked to run beyond its supported size.
struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A resource budget (frontier width, partition size, ...) was exceeded.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Not enough samples/sizes to run an extrapolation or fit.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Design matrix condition number above threshold.
struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rank-deficient relation fit (families with identical density vectors).
struct DegenerateDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dimer

#endif
