#pragma once

#include <stdexcept>
#include <string>

namespace jchi {

// Every failure raised by the kernel derives from Error; the CLI maps the
// subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Division by zero and similar hard arithmetic faults.
class ArithmeticError : public Error {
public:
    using Error::Error;
};

// Caller passed arguments outside an operation's contract.
class UsageError : public Error {
public:
    using Error::Error;
};

// Input lies outside the mathematical domain (zero series, pole, constant
// function fed to the Schwarzian).
class DomainError : public Error {
public:
    using Error::Error;
};

// A truncated computation could not certify its answer on its valid window.
class PrecisionError : public Error {
public:
    using Error::Error;
};

} // namespace jchi
