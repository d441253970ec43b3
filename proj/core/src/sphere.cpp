#include "siegel/sphere.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace siegel {

Complex SpherePoint::value() const {
    if (infinite_) throw std::logic_error("SpherePoint::value() called on infinity");
    return z_;
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
    const Complex za = a.value();
    const Complex zb = b.value();
    return 2.0 * std::abs(za - zb) /
           (std::sqrt(1.0 + std::norm(za)) * std::sqrt(1.0 + std::norm(zb)));
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
    if (p.is_infinite()) return os << "inf";
    return os << p.value();
}

} // namespace siegel
