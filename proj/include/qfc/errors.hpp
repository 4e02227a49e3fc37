#pragma once

#include <stdexcept>
#include <string>

namespace qfc
{
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed or physically invalid configuration (missing key, bad unit, kappa <= 0, ...).
class ConfigError : public Error
{
public:
    using Error::Error;
};

// Request outside the range where the model applies (pump above the linearization bound).
class ValidityError : public Error
{
public:
    using Error::Error;
};

// g2 of the signal/idler pair at zero pump is 0/0.
class UndefinedCorrelationError : public ValidityError
{
public:
    using ValidityError::ValidityError;
};

// Cavity response matrix cannot be inverted at the requested parameter point.
class SingularityError : public Error
{
public:
    using Error::Error;
};
} // namespace qfc
