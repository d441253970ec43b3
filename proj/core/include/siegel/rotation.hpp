#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "siegel/blaschke.hpp"
#include "siegel/numbers.hpp"

namespace siegel {

/// z -> e^{2 pi i theta} z
struct RigidRotation {
    double theta = 0.0;
};

using CircleMap = std::variant<BlaschkeProduct, RigidRotation>;

/// Continuous lift F of a degree-one circle map, in radians:
/// e^{i F(x)} = map(e^{i x}) and F(x + 2 pi) = F(x) + 2 pi.
///
/// For e^{it} B_{p,q} the lift is written in closed form,
///     F(x) = x + t + 2 arg p - 2 arg(1 - conj(q) e^{ix}) + 2 arg(1 - e^{ix}/p),
/// where both arguments stay in (-pi/2, pi/2), so no branch tracking is needed.
class CircleMapLift {
public:
    explicit CircleMapLift(CircleMap map);

    double operator()(double x) const { return x + displacement(x); }
    /// F(x) - x, 2 pi periodic.
    double displacement(double x) const;
    /// F^{-1}(y) by bisection on the monotone lift. Throws ConvergenceError if
    /// no bracket is found.
    double inverse(double y) const;

    /// F^k(x) for k >= 0, F^{-|k|}(x) for k < 0.
    double iterate(double x, std::int64_t k) const;

    const CircleMap& map() const { return map_; }

private:
    CircleMap map_;
    // Cached pieces of the closed form.
    double offset_ = 0.0;
    Complex q_conj_{};
    Complex p_inv_{};
    bool rigid_ = false;
};

/// Throws DomainError if the circle derivative goes negative on a fine grid,
/// i.e. the restriction is not an orientation-preserving homeomorphism.
void require_circle_homeomorphism(const CircleMap& map);

struct RotationEstimate {
    /// Extrapolated rotation number reduced to [0, 1).
    double rho = 0.0;
    /// Extrapolated value before reduction (continuous in the prefactor).
    double lifted = 0.0;
    /// (F^n(x0) - x0) / (2 pi n), within 1/n of the true lifted value.
    double birkhoff = 0.0;
    /// Bound on |lifted - true value|: 2/n.
    double error_bound = 0.0;
    std::int64_t iterations = 0;
};

/// Rotation number from n and 2n iterates of x0 with Richardson
/// extrapolation 2 R_{2n} - R_n. Throws DomainError for n == 0 or a map that
/// is not a circle homeomorphism.
RotationEstimate rotation_number(const CircleMap& map, double x0, std::int64_t n);

struct TuneOptions {
    /// Iterates for the final measurement.
    std::int64_t final_iterations = 1'000'000;
    /// Iterates per bisection probe; 0 picks clamp(20/tol, 1e4, final_iterations).
    std::int64_t search_iterations = 0;
    int max_depth = 64;
    double x0 = 0.0;
};

struct TuneResult {
    /// Prefactor angle in [0, 2 pi).
    double t = 0.0;
    /// Measured rotation number of e^{it} B at final_iterations.
    double rho = 0.0;
    /// Bisection steps taken.
    int iterations = 0;
    /// Last bracket [lo, hi] known to contain the exact solution.
    std::array<double, 2> bracket{0.0, 0.0};
};

/// The prefactor t for which e^{it} B_{p,q} has rotation number theta within
/// tol. Bisection on t, using that the lifted rotation number is
/// nondecreasing in t and gains exactly 1 over [0, 2 pi].
///
/// Throws DomainError for rational theta or tol < 1e-6, and
/// ConvergenceError (with the bracket in the message) after max_depth steps.
TuneResult tune_prefactor(Complex p, Complex q, const RotationNumber& theta, double tol,
                          const TuneOptions& options = {});

struct ComparabilityRow {
    std::size_t n = 0;
    std::int64_t q_n = 0;
    std::int64_t q_next = 0;
    /// |G^{-q_n}(z) - z| / |G^{q_n}(z) - z|
    double backward_min = 0.0, backward_max = 0.0;
    /// |G^{q_{n+1}}(z) - z| / |G^{q_n}(z) - z|
    double next_min = 0.0, next_max = 0.0;
    std::size_t flagged = 0;
};

struct ComparabilityReport {
    std::vector<ComparabilityRow> rows;
    /// Smallest K with every ratio in [1/K, K]; 1 for an empty report.
    double K = 1.0;
    std::size_t flagged = 0;
};

/// Ratio statistics over n = 1..n_max and `samples` equally spaced points of
/// the circle. Backward iterates use the monotone inverse of the lift.
ComparabilityReport comparability_report(const CircleMap& G, const RotationNumber& theta,
                                         std::size_t n_max, std::size_t samples);

/// Sign of the angle from 1 to G^{q_n}(1) in (-pi, pi], for n = 1..n_max.
std::vector<int> closest_return_sides(const CircleMap& G, const RotationNumber& theta, std::size_t n_max);

} // namespace siegel
