#pragma once

#include <stdexcept>
#include <string>

namespace sunflower {

/// Arithmetic outside the domain of an operation (inverting zero, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid construction parameters or mismatched operands.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or search would exceed its configured budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ParameterError(what);
}

}  // namespace detail

}  // namespace sunflower
