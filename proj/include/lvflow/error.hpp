#pragma once

#include <stdexcept>
#include <string>

namespace lvflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument or configuration value outside its validated domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not produce a trustworthy result.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The output location could not be written or an input could not be read.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lvflow
