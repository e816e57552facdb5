#pragma once

/// @file errors.hpp
/// @brief Exception hierarchy. Validation errors map to CLI exit code 1,
/// numerical failures to exit code 2.

#include <stdexcept>
#include <string>

namespace vsw {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: configuration, preconditions, incompatible data.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation could not be completed.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConfigError : public ValidationError {
public:
    ConfigError(const std::string& field, const std::string& what);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class InvalidShock : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class VacuumRisk : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class CompatibilityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoSolution : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BlowUp : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitUnavailable : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateDenominator : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class AssumptionViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DomainTooSmall : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace vsw
