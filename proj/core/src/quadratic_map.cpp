#include "siegel/quadratic_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "siegel/errors.hpp"
#include "siegel/format.hpp"

namespace siegel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kCollision = 1e-12;
constexpr double kNormalizationTol = 1e-9;

bool near_pole(Complex den, Complex bz) { return std::abs(den) <= 4.0 * kEps * (std::abs(bz) + 1.0); }

} // namespace

Complex multiplier_of(double theta) { return std::polar(1.0, 2.0 * std::numbers::pi * theta); }

QuadraticSiegelMap QuadraticSiegelMap::make(const SpherePoint& c, RotationNumber theta) {
    const Complex lambda = multiplier_of(theta.value());
    if (c.is_infinite()) return {c, std::move(theta), lambda, -lambda / 2.0, 0.0};
    const Complex cv = c.value();
    for (double bad : {0.0, 1.0, -1.0}) {
        if (std::abs(cv - bad) < kDegenerateRadius) {
            throw DegenerateParameter("critical parameter c = " + format_number(cv.real()) + "," +
                                      format_number(cv.imag()) + " is degenerate (c must avoid 0, 1, -1)");
        }
    }
    const Complex a = -lambda * (1.0 + cv) / (2.0 * cv);
    const Complex b = -2.0 / (1.0 + cv);
    return {c, std::move(theta), lambda, a, b};
}

SpherePoint QuadraticSiegelMap::operator()(const SpherePoint& z) const {
    if (z.is_infinite()) return z;
    const Complex w = z.value();
    const Complex bz = b_ * w;
    const Complex den = bz + 1.0;
    if (near_pole(den, bz)) return SpherePoint::infinity();
    return (a_ * w * w + lambda_ * w) / den;
}

SpherePoint eval(const QuadraticSiegelMap& g, const SpherePoint& z) { return g(z); }

Complex critical_numerator(const QuadraticSiegelMap& g, Complex z) {
    return g.a() * g.b() * z * z + 2.0 * g.a() * z + g.multiplier();
}

Complex derivative(const QuadraticSiegelMap& g, Complex z) {
    const Complex bz = g.b() * z;
    const Complex den = bz + 1.0;
    if (near_pole(den, bz)) throw PoleError("derivative evaluated at the pole of g_c");
    return critical_numerator(g, z) / (den * den);
}

std::array<SpherePoint, 2> critical_points(const QuadraticSiegelMap& g) {
    return {SpherePoint(1.0), g.critical_parameter()};
}

FixedPoints fixed_points(const QuadraticSiegelMap& g) {
    FixedPoints out;
    const Complex lambda = g.multiplier();
    if (g.is_polynomial()) {
        out.third = 2.0 * (lambda - 1.0) / lambda;
        return out;
    }
    const Complex c = g.critical_parameter().value();
    const Complex num = (1.0 - lambda) * 2.0 * c * (1.0 + c);
    const Complex den = 4.0 * c - lambda * (1.0 + c) * (1.0 + c);
    if (std::abs(den) <= kCollision * std::abs(num)) {
        out.third = SpherePoint::infinity();
        out.coincident = true;
        return out;
    }
    const Complex p = num / den;
    out.third = p;
    out.coincident = std::abs(p) < kCollision || std::abs(p) > 1.0 / kCollision;
    return out;
}

std::array<Complex, 2> two_fixed_point_parameters(Complex lambda) {
    // c^2 + B c + 1 with B = 2 - 4 / lambda; the roots multiply to 1.
    const Complex B = 2.0 - 4.0 / lambda;
    const Complex disc = std::sqrt(B * B - 4.0);
    Complex r1 = (-B - disc) / 2.0;
    if (std::abs(r1) < std::abs((-B + disc) / 2.0)) r1 = (-B + disc) / 2.0;
    return {r1, 1.0 / r1};
}

Complex tilde_parameter(Complex c, Complex lambda) {
    return ((lambda - 2.0) * c + lambda) / (-lambda * c + 2.0 - lambda);
}

Complex reflected_parameter(Complex c, Complex lambda) {
    return (-lambda * c + 2.0 - lambda) / ((lambda - 2.0) * c + lambda);
}

MoebiusMap normalizing_moebius(const QuadraticSiegelMap& g, Normalization which) {
    const SpherePoint& c = g.critical_parameter();
    auto third = [&] {
        const FixedPoints fp = fixed_points(g);
        if (fp.coincident || fp.third.is_infinite()) {
            throw DomainError("g_c has no third fixed point distinct from 0 and infinity");
        }
        return fp.third.value();
    };
    switch (which) {
    case Normalization::identity:
        return MoebiusMap::identity();
    case Normalization::fixed_point_to_infinity:
        return MoebiusMap::normalizing(0.0, 1.0, third());
    case Normalization::scale_by_critical:
        if (c.is_infinite()) throw DomainError("z -> z/c needs a finite critical parameter");
        return MoebiusMap::scaling(1.0 / c.value());
    case Normalization::critical_to_one:
        if (c.is_infinite()) throw DomainError("sending c to 1 needs a finite critical parameter");
        return MoebiusMap::normalizing(0.0, c.value(), third());
    }
    throw DomainError("unknown normalization");
}

Conjugation conjugate_by(const QuadraticSiegelMap& g, const MoebiusMap& m) {
    auto close = [](const SpherePoint& a, const SpherePoint& b) {
        return chordal_distance(a, b) < kNormalizationTol;
    };
    const SpherePoint inf = SpherePoint::infinity();
    if (!close(m(SpherePoint(0.0)), SpherePoint(0.0))) {
        throw DomainError("Moebius map does not fix the Siegel point 0");
    }
    const FixedPoints fp = fixed_points(g);
    const bool inf_to_inf = close(m(inf), inf);
    const bool third_to_inf = !fp.coincident && close(m(fp.third), inf);
    if (!inf_to_inf && !third_to_inf) {
        throw DomainError("Moebius map does not send a fixed point to infinity");
    }
    const SpherePoint& c = g.critical_parameter();
    SpherePoint new_c;
    if (close(m(SpherePoint(1.0)), SpherePoint(1.0))) {
        new_c = m(c);
    } else if (close(m(c), SpherePoint(1.0))) {
        new_c = m(SpherePoint(1.0));
    } else {
        throw DomainError("Moebius map does not send a critical point to 1");
    }
    Conjugation out{QuadraticSiegelMap::make(new_c, g.theta()), 0.0};
    const MoebiusMap m_inv = m.inverse();
    for (Complex probe : {Complex(0.3, 0.2), Complex(-0.7, 0.1), Complex(1.3, -0.4), Complex(0.0, 2.0)}) {
        const SpherePoint lhs = m(g(m_inv(probe)));
        const SpherePoint rhs = out.map(probe);
        out.residual = std::max(out.residual, chordal_distance(lhs, rhs));
    }
    return out;
}

Orbit orbit(const QuadraticSiegelMap& g, const SpherePoint& z0, std::size_t n) {
    Orbit out;
    out.points.reserve(n + 1);
    out.points.push_back(z0);
    if (z0.is_infinite()) {
        out.reached_infinity = true;
        return out;
    }
    SpherePoint z = z0;
    for (std::size_t k = 0; k < n; ++k) {
        z = g(z);
        out.points.push_back(z);
        if (z.is_infinite()) {
            out.reached_infinity = true;
            break;
        }
    }
    return out;
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit) {
    os << "index,re,im\n";
    for (std::size_t k = 0; k < orbit.points.size(); ++k) {
        const SpherePoint& p = orbit.points[k];
        os << k << ',';
        if (p.is_infinite()) {
            os << "inf,inf\n";
        } else {
            os << format_number(p.value().real()) << ',' << format_number(p.value().imag()) << '\n';
        }
    }
}

} // namespace siegel
