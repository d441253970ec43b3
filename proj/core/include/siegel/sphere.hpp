#pragma once

#include <complex>
#include <iosfwd>

namespace siegel {

using Complex = std::complex<double>;

/// A point of the Riemann sphere. Infinity is an explicit tag, not a
/// floating-point infinity.
class SpherePoint {
public:
    constexpr SpherePoint() = default;
    constexpr SpherePoint(Complex z) : z_(z) {}
    constexpr SpherePoint(double re, double im = 0.0) : z_(re, im) {}

    static constexpr SpherePoint infinity() {
        SpherePoint p;
        p.infinite_ = true;
        return p;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; throws std::logic_error at infinity.
    Complex value() const;

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.z_ == b.z_;
    }

private:
    Complex z_{};
    bool infinite_ = false;
};

/// Chordal distance on the unit sphere, in [0, 2].
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

} // namespace siegel
