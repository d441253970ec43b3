#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "siegel/sphere.hpp"

namespace siegel {

/// e^{it} z (z - p)/(1 - conj(p) z) (z - q)/(1 - conj(q) z) with |p| > 1 > |q|.
///
/// Symmetric under z -> 1/conj(z), so it preserves the unit circle; the
/// members built by phi_inverse restrict to circle homeomorphisms with a
/// double critical point at 1.
class BlaschkeProduct {
public:
    /// Throws DomainError unless |p| > 1 and |q| < 1.
    BlaschkeProduct(Complex p, Complex q, double angle = 0.0);

    Complex p() const { return p_; }
    Complex q() const { return q_; }
    double angle() const { return angle_; }

    BlaschkeProduct with_angle(double t) const { return {p_, q_, t}; }

    SpherePoint operator()(const SpherePoint& z) const;

private:
    Complex p_, q_;
    double angle_;
};

inline SpherePoint eval_blaschke(const BlaschkeProduct& B, const SpherePoint& z) { return B(z); }

/// Complex derivative B'(z). Throws PoleError at 1/conj(p) or 1/conj(q).
Complex blaschke_derivative(const BlaschkeProduct& B, Complex z);

/// d/d(alpha) of arg B(e^{i alpha}):
///     1 + (1-|q|^2)/|1 - conj(q) e^{ia}|^2 + (1-|p|^2)/|1 - conj(p) e^{ia}|^2.
/// Depends only on p and q.
double circle_derivative(Complex p, Complex q, double alpha);
inline double circle_derivative(const BlaschkeProduct& B, double alpha) {
    return circle_derivative(B.p(), B.q(), alpha);
}

/// Coefficients (lowest degree first) of the numerator of B'(z) without the
/// e^{it} factor, with w = p + q and v = p q:
///     v - 2 w z + (3 + |w|^2 - |v|^2) z^2 - 2 conj(w) z^3 + conj(v) z^4.
std::array<Complex, 5> derivative_numerator(Complex p, Complex q);

/// t = (2 + c + 1/conj(c)) / 2
Complex half_trace(Complex c);

/// Which closed-form solution for |v| a branch uses.
enum class BranchEquation { d1, d2, d3, d4, linear };

std::string_view to_string(BranchEquation e);

/// The coefficient data that fixes a candidate Blaschke product with critical
/// points 1 (double), c and 1/conj(c).
struct CriticalData {
    Complex c;
    Complex t_half;
    Complex s;
    Complex v;  // p q
    Complex w;  // p + q
    BranchEquation equation = BranchEquation::d2;
    /// Residual of the quadratic in |v| the branch solves.
    double modulus_residual = 0.0;
};

struct BranchSolution {
    CriticalData data;
    /// Roots of x^2 - w x + v, larger modulus first.
    std::array<Complex, 2> roots;
};

/// Every positive |v| solution for |c| > 1, c != 1: (d1, d2) when |t| > 1,
/// (d3, d4) when |t| < 1, and the single linear solution on gamma (|t| = 1).
/// Throws DomainError for |c| <= 1 or c == 1.
std::vector<BranchSolution> all_branches(Complex c);

/// One named branch; throws DomainError if it does not apply to c.
BranchSolution solve_branch(Complex c, BranchEquation which);

/// |t| > 1: the complement component of gamma containing 2 and infinity.
/// Throws DomainError for |c| <= 1.
bool in_region_U(const SpherePoint& c);

/// The unique member of the symmetric family whose free critical point is c
/// (prefactor 0). c = infinity gives p = 3, q = 0.
/// Throws OutOfRegion outside U and LabelingError if the roots of the
/// quadratic do not straddle the unit circle.
BlaschkeProduct phi_inverse(const SpherePoint& c);

/// n samples r e^{i phi} of the curve r + 1/r + 4 cos(phi) = 0, r > 1, with
/// phi spread over the open interval (2 pi/3, 4 pi/3). Throws for n < 2.
std::vector<Complex> gamma_curve(std::size_t n);

struct CriticalPointReport {
    /// Roots of the derivative numerator (three of them when q = 0).
    std::vector<Complex> roots;
    /// Expected roots: 1, 1, c, 1/conj(c) (or 1, 1, 0 for c = infinity).
    std::vector<Complex> expected;
    /// max |root - expected| under the best matching.
    double max_residual = 0.0;
};

CriticalPointReport verify_critical_points(const BlaschkeProduct& B, const SpherePoint& expected_c);

/// Largest-modulus simple critical point; infinity when q = 0.
SpherePoint free_critical_point(const BlaschkeProduct& B);

} // namespace siegel
