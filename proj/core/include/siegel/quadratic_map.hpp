#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "siegel/moebius.hpp"
#include "siegel/numbers.hpp"
#include "siegel/sphere.hpp"

namespace siegel {

/// Normalized quadratic rational map
///
///     g_c(z) = (a z^2 + lambda z) / (b z + 1),   lambda = exp(2 pi i theta)
///
/// with a Siegel fixed point at 0, g(inf) = inf and critical points 1 and c.
/// For finite c, a = -lambda (1 + c) / (2c) and b = -2 / (1 + c); c = inf
/// selects the polynomial lambda z - lambda z^2 / 2.
class QuadraticSiegelMap {
public:
    /// Parameters within this distance of 0, 1 or -1 are rejected.
    static constexpr double kDegenerateRadius = 1e-9;

    /// Throws DegenerateParameter for c near {0, 1, -1}.
    static QuadraticSiegelMap make(const SpherePoint& c, RotationNumber theta);

    const SpherePoint& critical_parameter() const { return c_; }
    const RotationNumber& theta() const { return theta_; }
    Complex multiplier() const { return lambda_; }
    Complex a() const { return a_; }
    Complex b() const { return b_; }
    bool is_polynomial() const { return c_.is_infinite(); }

    SpherePoint operator()(const SpherePoint& z) const;

private:
    QuadraticSiegelMap(SpherePoint c, RotationNumber theta, Complex lambda, Complex a, Complex b)
        : c_(c), theta_(std::move(theta)), lambda_(lambda), a_(a), b_(b) {}

    SpherePoint c_;
    RotationNumber theta_;
    Complex lambda_, a_, b_;
};

inline QuadraticSiegelMap make_map(const SpherePoint& c, RotationNumber theta) {
    return QuadraticSiegelMap::make(c, std::move(theta));
}

/// exp(2 pi i theta)
Complex multiplier_of(double theta);

SpherePoint eval(const QuadraticSiegelMap& g, const SpherePoint& z);

/// g'(z) = (a b z^2 + 2 a z + lambda) / (b z + 1)^2. Throws PoleError at the pole.
Complex derivative(const QuadraticSiegelMap& g, Complex z);

/// Numerator a b z^2 + 2 a z + lambda of g'; its roots are the critical points.
Complex critical_numerator(const QuadraticSiegelMap& g, Complex z);

std::array<SpherePoint, 2> critical_points(const QuadraticSiegelMap& g);

struct FixedPoints {
    SpherePoint zero;
    SpherePoint infinity = SpherePoint::infinity();
    /// (1 - lambda) 2c(1 + c) / (4c - lambda (1 + c)^2); 2(lambda - 1)/lambda at c = inf.
    SpherePoint third;
    /// third collides numerically with 0 or infinity.
    bool coincident = false;
};

FixedPoints fixed_points(const QuadraticSiegelMap& g);

/// Critical parameters for which g_c has only the two fixed points 0 and inf:
/// roots of c^2 + (2 - 4 / lambda) c + 1 = 0.
std::array<Complex, 2> two_fixed_point_parameters(Complex lambda);

/// Critical parameter of psi o g_c o psi^-1 where psi(z) = (1 - p) z / (z - p)
/// sends 0, 1, p to 0, 1, inf:
///     ((lambda - 2) c + lambda) / (-lambda c + 2 - lambda).
Complex tilde_parameter(Complex c, Complex lambda);

/// mu(c) = 1 / tilde_parameter(c). An involution.
Complex reflected_parameter(Complex c, Complex lambda);

/// The four normalizing conjugacies between members of the family.
enum class Normalization {
    identity,               // phi = id
    fixed_point_to_infinity,  // 0 -> 0, 1 -> 1, p -> inf
    scale_by_critical,      // z -> z / c
    critical_to_one,        // 0 -> 0, c -> 1, p -> inf
};

/// Throws DomainError when the case needs a third fixed point or finite c that
/// the map does not have.
MoebiusMap normalizing_moebius(const QuadraticSiegelMap& g, Normalization which);

struct Conjugation {
    QuadraticSiegelMap map;
    /// max chordal distance between m o g o m^-1 and the rebuilt map at fixed probes.
    double residual = 0.0;
};

/// m o g o m^-1, provided m sends 0 to 0, one critical point to 1 and a fixed
/// point to infinity. Throws DomainError otherwise.
Conjugation conjugate_by(const QuadraticSiegelMap& g, const MoebiusMap& m);

struct Orbit {
    std::vector<SpherePoint> points;
    /// An iterate landed on infinity; the orbit stops there.
    bool reached_infinity = false;
};

/// z0, g(z0), ..., g^n(z0), stopping at the first infinite iterate.
Orbit orbit(const QuadraticSiegelMap& g, const SpherePoint& z0, std::size_t n);

/// CSV with header "index,re,im"; infinite rows are written as "inf,inf".
void write_orbit_csv(std::ostream& os, const Orbit& orbit);

} // namespace siegel
