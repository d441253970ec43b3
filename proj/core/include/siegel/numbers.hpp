#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace siegel {

/// A convergent p/q of a continued fraction, q >= 1.
struct Convergent {
    std::int64_t p = 0;
    std::int64_t q = 1;

    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Result of a Gauss-map expansion.
struct Expansion {
    std::vector<std::int64_t> terms;
    /// The residual vanished (below 1e-14): the input is rational to
    /// double precision.
    bool terminated = false;
};

/// Gauss-map expansion of theta in (0,1), truncated at `depth` terms, when
/// the residual falls below 1e-14, or when propagated rounding error makes
/// further partial quotients unreliable. Throws DomainError outside (0,1).
Expansion expand(double theta, std::size_t depth);

/// Partial quotients a_1..a_n of theta = [a_1, a_2, ...].
std::vector<std::int64_t> continued_fraction(double theta, std::size_t depth);

struct ConvergentList {
    std::vector<Convergent> values;
    /// n exceeded the number of available partial quotients.
    bool truncated = false;
};

/// First n convergents p_k/q_k (k = 1..n) via the standard recurrence.
/// Throws DomainError for an empty expansion.
ConvergentList convergents(std::span<const std::int64_t> cf, std::size_t n);

/// True iff every partial quotient is <= bound. Throws on empty input.
bool is_bounded_type(std::span<const std::int64_t> cf, std::int64_t bound);

/// Folds [a_1, ..., a_n] back into 1/(a_1 + 1/(a_2 + ...)).
double fold(std::span<const std::int64_t> cf);

/// An irrational rotation number stored as both its value and its
/// truncated continued fraction.
class RotationNumber {
public:
    static constexpr std::size_t kDefaultDepth = 40;

    /// Throws DomainError outside (0,1).
    static RotationNumber from_value(double theta, std::size_t depth = kDefaultDepth);
    /// Value is the fold of the given terms; all terms must be >= 1.
    static RotationNumber from_terms(std::vector<std::int64_t> terms);
    /// (sqrt(5) - 1) / 2.
    static RotationNumber golden_mean();

    double value() const { return value_; }
    std::span<const std::int64_t> terms() const { return cf_; }
    /// max a_i over the computed terms.
    std::int64_t bound() const { return bound_; }
    /// The expansion ended exactly: theta is rational to double precision.
    bool is_rational() const { return rational_; }

    ConvergentList convergents(std::size_t n) const;
    /// q_n for n >= 1; throws DomainError if n is beyond the expansion.
    std::int64_t denominator(std::size_t n) const;

private:
    RotationNumber(double value, std::vector<std::int64_t> cf, bool rational);

    double value_ = 0.0;
    std::vector<std::int64_t> cf_;
    std::int64_t bound_ = 0;
    bool rational_ = false;
};

} // namespace siegel
