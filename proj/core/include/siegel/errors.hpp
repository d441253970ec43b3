#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace siegel {

/// Base class for every recoverable numerical or domain failure raised by
/// the library. The command-line front end maps it to exit status 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// c in {0, 1, -1} (or within 1e-9 of them).
class DegenerateParameter : public DomainError {
public:
    using DomainError::DomainError;
};

/// Evaluation of a derivative at a pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Parameter outside the region where a construction is defined.
class OutOfRegion : public DomainError {
public:
    using DomainError::DomainError;
};

/// Roots of the Vieta quadratic do not straddle the unit circle.
class LabelingError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A critical orbit escaped, hit a pole, or collapsed onto itself.
class OrbitError : public DomainError {
public:
    enum class Kind { escaped, collapsed };

    OrbitError(const std::string& what, std::size_t iterate, Kind kind = Kind::escaped)
        : DomainError(what), iterate_(iterate), kind_(kind) {}

    std::size_t iterate() const noexcept { return iterate_; }
    Kind kind() const noexcept { return kind_; }

private:
    std::size_t iterate_;
    Kind kind_;
};

} // namespace siegel
