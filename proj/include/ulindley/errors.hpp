#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ulindley {

/// Base of every error raised by the library. The CLI maps the concrete
/// type to an exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function or a parameter
/// bundle that violates its invariants.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input data that cannot be parsed or is out of range. `location` is the
/// offending element index (library calls) or file line (CSV ingestion).
class DataError : public Error {
public:
    DataError(const std::string& what, std::optional<std::size_t> location = std::nullopt)
        : Error(what), location_(location) {}

    std::optional<std::size_t> location() const noexcept { return location_; }

private:
    std::optional<std::size_t> location_;
};

/// Preconditions of an estimator that the sample does not satisfy.
class EstimationError : public Error {
public:
    enum class Reason {
        AllAtInflationPoint,
        NoneAtInflationPoint,
        NoZeros,
        NoOnes,
        NoInteriorData,
        OppositeEndpoint,
        ModelMismatch,
        TooFewInterior,
    };

    EstimationError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

/// Sample carries mass at a point the model gives probability zero.
class ModelMismatchError : public EstimationError {
public:
    explicit ModelMismatchError(const std::string& what)
        : EstimationError(Reason::ModelMismatch, what) {}
};

/// Root bracket without a sign change.
class NoSignChangeError : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int iterations, double last_iterate)
        : Error(what), iterations_(iterations), last_iterate_(last_iterate) {}

    int iterations() const noexcept { return iterations_; }
    double last_iterate() const noexcept { return last_iterate_; }

private:
    int iterations_;
    double last_iterate_;
};

}  // namespace ulindley
