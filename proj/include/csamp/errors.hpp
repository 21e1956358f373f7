#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace csamp {

/// Input failed a structural or range check (bad dimensions, nonfinite
/// entries, nonpositive parameters, malformed files).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionError : public ValidationError {
public:
    explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

/// Argument lies outside the mathematical domain of the operation
/// (lattice point of a series, t <= 0 where t > 0 is required, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// (sI - A) was numerically singular: s sits on (or too close to) the
/// spectrum of A. Carries the offending point.
class ResolventAtSpectrumError : public std::runtime_error {
public:
    ResolventAtSpectrumError(std::complex<double> s, const std::string& what)
        : std::runtime_error(what), point(s) {}
    std::complex<double> point;
};

/// Contour placement violates its preconditions (abscissa at/below the
/// spectrum bound, eigenvalue inside the ambiguity band of a circle).
class ContourPlacementError : public std::runtime_error {
public:
    explicit ContourPlacementError(const std::string& what) : std::runtime_error(what) {}
};

/// Eigenvalue clusters too close to be enclosed by disjoint circles.
class UnseparableSpectrumError : public std::runtime_error {
public:
    explicit UnseparableSpectrumError(const std::string& what) : std::runtime_error(what) {}
};

/// Plant has D != 0; the corrected discrete model is defined for D = 0 only.
class UnsupportedFeedthroughError : public ValidationError {
public:
    explicit UnsupportedFeedthroughError(const std::string& what) : ValidationError(what) {}
};

/// An aliasing grid point s + j n w_s collided with a plant pole. Carries n.
class PoleCollisionError : public std::runtime_error {
public:
    PoleCollisionError(long long n_, const std::string& what)
        : std::runtime_error(what), n(n_) {}
    long long n;
};

/// Series evaluated outside its convergence region.
class DivergentSeriesError : public DomainError {
public:
    explicit DivergentSeriesError(const std::string& what) : DomainError(what) {}
};

}  // namespace csamp
