#pragma once

#include <stdexcept>
#include <string>

namespace collectorlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: sizes, exponents, probabilities, replicate counts.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An asymptotic formula or normalization constant is undefined at the
/// requested parameters (for example ln ln(m/p) <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exact subset enumeration was requested for a family above the size cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not reach its tolerance. Carries the best
/// estimate available when it gave up.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// A simulated episode exceeded the draw-count safety cap.
class RunawayError : public Error {
public:
    using Error::Error;
};

}  // namespace collectorlab
