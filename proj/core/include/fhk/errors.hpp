#pragma once

#include <stdexcept>
#include <string>

namespace fhk {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation
/// (t <= 0 where positive time is required, alpha out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested evaluation path does not support this input, e.g. a
/// non-constant coefficient on the Fourier route or a non-periodic grid
/// on the spectral operator.
class UnsupportedRoute : public Error {
public:
    using Error::Error;
};

/// The plain Fourier integral diverges for this query; the caller must
/// switch to the named route.
class RouteRequired : public Error {
public:
    RouteRequired(std::string route, const std::string& what)
        : Error(what + " (use the " + route + " route)"), route_(std::move(route)) {}

    const std::string& route() const noexcept { return route_; }

private:
    std::string route_;
};

/// A fit or statistic was requested with too few usable data points.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// A quadrature could not reach its target, or a tail bound was exceeded.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Explicit time step above the stability limit.
class CflViolation : public Error {
public:
    CflViolation(double requested, double admissible)
        : Error("time step " + std::to_string(requested) + " exceeds admissible " +
                std::to_string(admissible)),
          requested_(requested),
          admissible_(admissible) {}

    double requested() const noexcept { return requested_; }
    double admissible() const noexcept { return admissible_; }

private:
    double requested_;
    double admissible_;
};

}  // namespace fhk
