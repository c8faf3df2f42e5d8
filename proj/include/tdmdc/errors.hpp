#pragma once

#include <stdexcept>
#include <string>

namespace tdmdc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input data (bad indices, mismatched channels, parse failures).
class InputError : public Error {
 public:
    using Error::Error;
};

/// Numerical breakdown: singular systems, rank collapse, failed eigensolves.
class NumericalError : public Error {
 public:
    using Error::Error;
};

/// Inconsistent run configuration.
class ConfigError : public Error {
 public:
    using Error::Error;
};

}  // namespace tdmdc
