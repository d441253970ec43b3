#pragma once

#include "siegel/sphere.hpp"

namespace siegel {

/// z -> (a z + b) / (c z + d) with ad - bc != 0, acting on the Riemann sphere.
class MoebiusMap {
public:
    /// Throws DomainError for a singular matrix.
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static MoebiusMap scaling(Complex k) { return {k, 0.0, 0.0, 1.0}; }
    /// The unique map sending z0 -> 0, z1 -> 1, z_inf -> infinity. z0 and z1
    /// must be finite; z_inf may be infinity.
    static MoebiusMap normalizing(Complex z0, Complex z1, SpherePoint z_inf);

    SpherePoint operator()(const SpherePoint& z) const;

    MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }
    /// (*this) o other
    MoebiusMap compose(const MoebiusMap& other) const;

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    Complex determinant() const { return a_ * d_ - b_ * c_; }

private:
    Complex a_, b_, c_, d_;
};

} // namespace siegel
