#include "siegel/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "siegel/errors.hpp"
#include "siegel/polynomial.hpp"

namespace siegel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// |t|^2 - 1 below this is treated as lying on gamma.
constexpr double kOnGamma = 1e-12;

bool vanishes(Complex den, Complex scale) { return std::abs(den) <= 4.0 * kEps * (std::abs(scale) + 1.0); }

/// (z - a)/(1 - conj(a) z), infinity at the pole.
SpherePoint factor(Complex a, Complex z) {
    const Complex az = std::conj(a) * z;
    const Complex den = 1.0 - az;
    if (vanishes(den, az)) return SpherePoint::infinity();
    return (z - a) / den;
}

std::array<Complex, 2> vieta_roots(Complex w, Complex v) {
    // x^2 - w x + v, avoiding cancellation in the smaller root.
    const Complex disc = std::sqrt(w * w - 4.0 * v);
    const Complex r1 = std::abs(w + disc) >= std::abs(w - disc) ? (w + disc) / 2.0 : (w - disc) / 2.0;
    const Complex r2 = r1 == Complex{} ? Complex{} : v / r1;
    if (std::abs(r2) > std::abs(r1)) return {r2, r1};
    return {r1, r2};
}

struct Invariants {
    Complex t, s;
    double T;  // |t|^2 - 1
    double S;  // |s|
    double R;  // |c + 1/c - 2|
};

Invariants invariants(Complex c) {
    Invariants k;
    const Complex inv_conj = 1.0 / std::conj(c);
    k.t = (2.0 + c + inv_conj) / 2.0;
    k.s = 1.0 + c / std::conj(c) + 2.0 * (c + inv_conj);
    k.T = std::norm(k.t) - 1.0;
    k.S = std::abs(k.s);
    k.R = std::abs(c + 1.0 / c - 2.0);
    return k;
}

BranchSolution make_branch(Complex c, const Invariants& k, BranchEquation eq, double modulus, double sign) {
    BranchSolution out;
    CriticalData& d = out.data;
    d.c = c;
    d.t_half = k.t;
    d.s = k.s;
    d.equation = eq;
    d.v = sign * c * modulus / std::abs(c);
    d.w = std::conj(k.t) * d.v;
    // sign +1: T |v|^2 - S |v| + 3 = 0; sign -1: T |v|^2 + S |v| + 3 = 0.
    d.modulus_residual = std::abs(k.T * modulus * modulus - sign * k.S * modulus + 3.0) /
                         std::max(1.0, std::abs(k.T) * modulus * modulus + k.S * modulus + 3.0);
    out.roots = vieta_roots(d.w, d.v);
    return out;
}

void check_outside(Complex c) {
    if (!(std::abs(c) > 1.0)) throw DomainError("critical parameter must satisfy |c| > 1");
    if (c == Complex(1.0, 0.0)) throw DomainError("critical parameter c = 1 is degenerate");
}

} // namespace

BlaschkeProduct::BlaschkeProduct(Complex p, Complex q, double angle) : p_(p), q_(q), angle_(angle) {
    if (!(std::abs(p) > 1.0) || !(std::abs(q) < 1.0)) {
        throw DomainError("Blaschke product needs |p| > 1 and |q| < 1");
    }
}

SpherePoint BlaschkeProduct::operator()(const SpherePoint& z) const {
    if (z.is_infinite()) return z;
    const Complex zv = z.value();
    const SpherePoint fp = factor(p_, zv);
    const SpherePoint fq = factor(q_, zv);
    if (fp.is_infinite() || fq.is_infinite()) return SpherePoint::infinity();
    return std::polar(1.0, angle_) * zv * fp.value() * fq.value();
}

Complex blaschke_derivative(const BlaschkeProduct& B, Complex z) {
    const auto num = derivative_numerator(B.p(), B.q());
    const Complex v = B.p() * B.q();
    const Complex w = B.p() + B.q();
    const Complex den = std::conj(v) * z * z - std::conj(w) * z + 1.0;
    if (vanishes(den, std::conj(w) * z)) throw PoleError("Blaschke derivative evaluated at a pole");
    return std::polar(1.0, B.angle()) * horner(num, z) / (den * den);
}

double circle_derivative(Complex p, Complex q, double alpha) {
    const Complex e = std::polar(1.0, alpha);
    return 1.0 + (1.0 - std::norm(q)) / std::norm(1.0 - std::conj(q) * e) +
           (1.0 - std::norm(p)) / std::norm(1.0 - std::conj(p) * e);
}

std::array<Complex, 5> derivative_numerator(Complex p, Complex q) {
    const Complex w = p + q;
    const Complex v = p * q;
    return {v, -2.0 * w, 3.0 + std::norm(w) - std::norm(v), -2.0 * std::conj(w), std::conj(v)};
}

Complex half_trace(Complex c) { return (2.0 + c + 1.0 / std::conj(c)) / 2.0; }

std::string_view to_string(BranchEquation e) {
    switch (e) {
    case BranchEquation::d1: return "d1";
    case BranchEquation::d2: return "d2";
    case BranchEquation::d3: return "d3";
    case BranchEquation::d4: return "d4";
    case BranchEquation::linear: return "linear";
    }
    return "?";
}

std::vector<BranchSolution> all_branches(Complex c) {
    check_outside(c);
    const Invariants k = invariants(c);
    std::vector<BranchSolution> out;
    if (std::abs(k.T) <= kOnGamma) {
        out.push_back(make_branch(c, k, BranchEquation::linear, 3.0 / k.S, 1.0));
    } else if (k.T > 0.0) {
        out.push_back(make_branch(c, k, BranchEquation::d1, (k.S - k.R) / (2.0 * k.T), 1.0));
        out.push_back(make_branch(c, k, BranchEquation::d2, (k.S + k.R) / (2.0 * k.T), 1.0));
    } else {
        out.push_back(make_branch(c, k, BranchEquation::d3, (-k.S - k.R) / (2.0 * k.T), -1.0));
        out.push_back(make_branch(c, k, BranchEquation::d4, (k.S - k.R) / (2.0 * k.T), 1.0));
    }
    return out;
}

BranchSolution solve_branch(Complex c, BranchEquation which) {
    for (auto& b : all_branches(c)) {
        if (b.data.equation == which) return b;
    }
    throw DomainError("branch " + std::string(to_string(which)) + " does not apply to this parameter");
}

bool in_region_U(const SpherePoint& c) {
    if (c.is_infinite()) return true;
    const Complex cv = c.value();
    if (!(std::abs(cv) > 1.0)) throw DomainError("region test needs |c| > 1");
    return std::abs(half_trace(cv)) > 1.0;
}

BlaschkeProduct phi_inverse(const SpherePoint& c) {
    if (c.is_infinite()) return {3.0, 0.0};
    if (!in_region_U(c)) throw OutOfRegion("critical parameter lies outside the region U");
    const BranchSolution b = solve_branch(c.value(), BranchEquation::d2);
    const auto [p, q] = b.roots;
    if (!(std::abs(p) > 1.0 && std::abs(q) < 1.0)) {
        throw LabelingError("roots of x^2 - w x + v do not straddle the unit circle");
    }
    return {p, q};
}

std::vector<Complex> gamma_curve(std::size_t n) {
    if (n < 2) throw DomainError("gamma_curve needs at least two samples");
    std::vector<Complex> out;
    out.reserve(n);
    const double lo = 2.0 * std::numbers::pi / 3.0;
    const double span = 2.0 * std::numbers::pi / 3.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double phi = lo + span * (static_cast<double>(k) + 1.0) / (static_cast<double>(n) + 1.0);
        const double cs = std::cos(phi);
        const double r = -2.0 * cs + std::sqrt(4.0 * cs * cs - 1.0);
        out.push_back(std::polar(r, phi));
    }
    return out;
}

CriticalPointReport verify_critical_points(const BlaschkeProduct& B, const SpherePoint& expected_c) {
    CriticalPointReport rep;
    const auto num = derivative_numerator(B.p(), B.q());
    rep.roots = polynomial_roots(num);
    rep.expected = {1.0, 1.0};
    if (expected_c.is_infinite()) {
        rep.expected.push_back(0.0);
    } else {
        rep.expected.push_back(expected_c.value());
        rep.expected.push_back(1.0 / std::conj(expected_c.value()));
    }
    if (rep.roots.size() != rep.expected.size()) {
        rep.max_residual = std::numeric_limits<double>::infinity();
        return rep;
    }
    std::vector<std::size_t> perm(rep.roots.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            worst = std::max(worst, std::abs(rep.roots[perm[i]] - rep.expected[i]));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.max_residual = best;
    return rep;
}

SpherePoint free_critical_point(const BlaschkeProduct& B) {
    const auto num = derivative_numerator(B.p(), B.q());
    auto roots = polynomial_roots(num);
    if (roots.size() < 4) return SpherePoint::infinity();
    // Drop the two roots nearest the double critical point at 1.
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });
    return std::abs(roots[2]) >= std::abs(roots[3]) ? roots[2] : roots[3];
}

} // namespace siegel
