#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

// Argument outside the mathematical domain of a function (t <= 0, r >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Finite arguments whose result does not fit in a double.
class OverflowError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Parameter set outside the range where an inequality or constant is defined.
class ValidityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Caller broke a precondition that is not a domain question
// (insufficient smoothness, order above the supported maximum).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace hardylab
