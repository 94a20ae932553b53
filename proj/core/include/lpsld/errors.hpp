#pragma once

#include <stdexcept>
#include <string>

namespace lpsld {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function (p <= 1, t2 >= 1/p, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The dual continuation could not reach the requested threshold. `reached()`
/// is the largest threshold for which a dual point was found, i.e. an empirical
/// lower bound for the edge of the effective domain.
class DomainExceeded : public Error {
public:
    DomainExceeded(const std::string& what, double reached)
        : Error(what), reached_(reached) {}

    [[nodiscard]] double reached() const noexcept { return reached_; }

private:
    double reached_;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NonFinite : public Error {
public:
    using Error::Error;
};

class DegenerateCurvature : public Error {
public:
    using Error::Error;
};

}  // namespace lpsld
