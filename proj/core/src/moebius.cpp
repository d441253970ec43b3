#include "siegel/moebius.hpp"

#include "siegel/errors.hpp"

namespace siegel {

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (determinant() == Complex{}) throw DomainError("Moebius map with zero determinant");
}

MoebiusMap MoebiusMap::normalizing(Complex z0, Complex z1, SpherePoint z_inf) {
    if (z0 == z1) throw DomainError("normalizing Moebius map needs distinct points");
    if (z_inf.is_infinite()) return {1.0, -z0, 0.0, z1 - z0};
    const Complex zi = z_inf.value();
    if (zi == z0 || zi == z1) throw DomainError("normalizing Moebius map needs distinct points");
    // (z - z0)(z1 - zi) / ((z - zi)(z1 - z0))
    const Complex k = z1 - zi;
    const Complex l = z1 - z0;
    return {k, -z0 * k, l, -zi * l};
}

SpherePoint MoebiusMap::operator()(const SpherePoint& z) const {
    if (z.is_infinite()) {
        if (c_ == Complex{}) return SpherePoint::infinity();
        return a_ / c_;
    }
    const Complex w = z.value();
    const Complex den = c_ * w + d_;
    if (den == Complex{}) return SpherePoint::infinity();
    return (a_ * w + b_) / den;
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

} // namespace siegel
