#pragma once

#include <stdexcept>
#include <string>

namespace qturan {

/// Argument outside the mathematical domain of the requested function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed argument that is not a domain question (empty lists, bad sequences).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Index outside the range where an operation is defined (e.g. n = 0 for Turán ratios).
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Two independent evaluation routes disagreed beyond their combined error bounds.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qturan
