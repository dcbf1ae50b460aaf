#pragma once

#include <stdexcept>
#include <string>

namespace vrpo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters, malformed configurations, unknown names.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Two vortices closer than the collision threshold.
class CollisionError : public Error {
public:
    CollisionError(const std::string& what, double distance, double time = 0.0)
        : Error(what), distance_(distance), time_(time) {}
    double distance() const { return distance_; }
    double time() const { return time_; }

private:
    double distance_;
    double time_;
};

// Reduced point outside the feasible domain, or empty domain.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Configuration does not lie in the fixed space of a chart or group.
class NotInFixedSpace : public Error {
public:
    NotInFixedSpace(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Step-size underflow, non-convergence, and similar numerical aborts.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace vrpo
