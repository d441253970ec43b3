#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <siegel/blaschke.hpp>
#include <siegel/errors.hpp>
#include <siegel/polynomial.hpp>

using namespace siegel;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Roots of a polynomial (lowest degree first) as eigenvalues of its companion matrix.
std::vector<Complex> companion_roots(std::vector<Complex> coeffs) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-14) coeffs.pop_back();
    const std::size_t n = coeffs.size() - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / coeffs[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    std::vector<Complex> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

double matched_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Complex& x : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](Complex u, Complex v) { return std::abs(u - x) < std::abs(v - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

Complex random_in_U(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(1.1, 10.0), a(0.0, kTwoPi);
    for (;;) {
        const Complex c = std::polar(r(rng), a(rng));
        if (in_region_U(c) && std::abs(half_trace(c)) > 1.05) return c;
    }
}

/// Unwrapped arg B(e^{i alpha}) by small steps.
double lifted_arg(const BlaschkeProduct& B, double alpha) {
    return std::arg(B(std::polar(1.0, alpha)).value());
}

} // namespace

TEST(Blaschke, ConstructionRequiresStraddlingZeros) {
    EXPECT_THROW(BlaschkeProduct(0.5, 0.2), DomainError);
    EXPECT_THROW(BlaschkeProduct(2.0, 1.0), DomainError);
    EXPECT_NO_THROW(BlaschkeProduct(3.0, 0.0));
}

TEST(Blaschke, OriginFixedAndCircleInvariant) {
    const BlaschkeProduct B(Complex(1.5, 0.4), Complex(0.2, -0.3), 0.7);
    EXPECT_EQ(B(SpherePoint(0.0)), SpherePoint(0.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> a(0.0, kTwoPi);
    for (int i = 0; i < 1000; ++i) EXPECT_NEAR(std::abs(B(std::polar(1.0, a(rng))).value()), 1.0, 1e-12);
}

TEST(Blaschke, ReflectionSymmetry) {
    const BlaschkeProduct B(Complex(1.5, 0.4), Complex(0.2, -0.3), 1.1);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex z(n(rng), n(rng));
        const SpherePoint bz = B(z);
        const SpherePoint br = B(1.0 / std::conj(z));
        if (bz.is_infinite() || br.is_infinite()) continue;
        const Complex expected = 1.0 / std::conj(bz.value());
        EXPECT_LT(std::abs(br.value() - expected) / std::max(1.0, std::abs(expected)), 1e-12);
    }
}

TEST(Blaschke, PolesMapToInfinity) {
    const BlaschkeProduct B(Complex(2.0, 0.0), Complex(0.5, 0.0));
    EXPECT_TRUE(B(SpherePoint(0.5)).is_infinite());
    EXPECT_TRUE(B(SpherePoint(2.0)).is_infinite());
    EXPECT_TRUE(B(SpherePoint::infinity()).is_infinite());
}

TEST(CircleDerivative, HandValueAtCriticalPoint) {
    EXPECT_NEAR(circle_derivative(3.0, 0.0, 0.0), 0.0, 1e-15);
}

TEST(CircleDerivative, IntegratesToTwoPi) {
    for (const auto& B : {BlaschkeProduct(3.0, 0.0), BlaschkeProduct(Complex(1.5, 0.4), Complex(0.2, -0.3)),
                          phi_inverse(SpherePoint(2.0))}) {
        const int n = 4096;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += circle_derivative(B, kTwoPi * k / n);
        EXPECT_NEAR(sum * kTwoPi / n, kTwoPi, 1e-6);
    }
}

TEST(CircleDerivative, MatchesFiniteDifferenceOfArgument) {
    const BlaschkeProduct B(Complex(1.7, 0.2), Complex(0.3, 0.1));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> a(0.0, kTwoPi);
    const double h = 1e-6;
    for (int i = 0; i < 1000; ++i) {
        const double x = a(rng);
        double d = lifted_arg(B, x + h) - lifted_arg(B, x - h);
        d -= kTwoPi * std::round(d / kTwoPi);
        EXPECT_NEAR(d / (2.0 * h), circle_derivative(B, x), 1e-5);
    }
}

TEST(CircleDerivative, DoubleZeroAtOneForPolynomialModel) {
    const BlaschkeProduct B = phi_inverse(SpherePoint::infinity());
    const double h = 1e-4;
    const double d0 = circle_derivative(B, 0.0);
    const double d2 = (circle_derivative(B, h) - 2.0 * d0 + circle_derivative(B, -h)) / (h * h);
    const double d1 = (circle_derivative(B, h) - circle_derivative(B, -h)) / (2.0 * h);
    EXPECT_NEAR(d0, 0.0, 1e-14);
    EXPECT_NEAR(d1, 0.0, 1e-8);
    EXPECT_GT(d2, 0.1);
}

TEST(Branches, ExampleOne) {
    const auto bs = all_branches(2.0);
    ASSERT_EQ(bs.size(), 2u);
    std::vector<double> moduli;
    for (const auto& b : bs) {
        moduli.push_back(std::abs(b.data.v));
        EXPECT_LT(b.data.modulus_residual, 1e-10);
    }
    std::sort(moduli.begin(), moduli.end());
    EXPECT_NEAR(moduli[0], 4.0 / 5.0, 1e-12);
    EXPECT_NEAR(moduli[1], 12.0 / 13.0, 1e-12);
    const auto d1 = solve_branch(2.0, BranchEquation::d1);
    EXPECT_LT(matched_distance({d1.roots[0], d1.roots[1]}, {1.0, 0.8}), 1e-9);
    EXPECT_NEAR(d1.data.w.real(), 9.0 / 5.0, 1e-12);
    const auto d2 = solve_branch(2.0, BranchEquation::d2);
    EXPECT_NEAR(d2.data.w.real(), 27.0 / 13.0, 1e-12);
}

TEST(Branches, ExampleTwo) {
    const auto bs = all_branches(-2.0);
    ASSERT_EQ(bs.size(), 2u);
    bool saw_small = false, saw_large = false;
    for (const auto& b : bs) {
        const std::vector<Complex> roots{b.roots[0], b.roots[1]};
        if (std::abs(b.data.v - Complex(-0.8, 0.0)) < 1e-12) {
            saw_small = true;
            EXPECT_NEAR(b.data.w.real(), 0.2, 1e-12);
            EXPECT_LT(matched_distance(roots, {1.0, -0.8}), 1e-9);
        }
        if (std::abs(b.data.v - Complex(4.0, 0.0)) < 1e-12) {
            saw_large = true;
            EXPECT_NEAR(b.data.w.real(), -1.0, 1e-12);
            EXPECT_LT(matched_distance(roots, {Complex(-0.5, 1.936491), Complex(-0.5, -1.936491)}), 1e-5);
        }
    }
    EXPECT_TRUE(saw_small);
    EXPECT_TRUE(saw_large);
}

TEST(Branches, CriticalDataInvariants) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const Complex c = random_in_U(rng);
        for (const auto& b : all_branches(c)) {
            const auto& d = b.data;
            EXPECT_LT(std::abs(std::conj(d.w) / std::conj(d.v) - d.t_half), 1e-10 * std::abs(d.t_half));
            EXPECT_LT(std::abs((d.v / c).imag()), 1e-10 * std::abs(d.v / c));
            EXPECT_LT(d.modulus_residual, 1e-10);
        }
    }
}

TEST(Branches, OnGammaUsesTheLinearSolution) {
    for (Complex c : gamma_curve(7)) {
        const auto bs = all_branches(c);
        ASSERT_EQ(bs.size(), 1u);
        EXPECT_EQ(bs[0].data.equation, BranchEquation::linear);
        const double limit_from_d1 = [&] {
            const Complex nudged = c * 1.000001;
            return std::abs(solve_branch(nudged, BranchEquation::d1).data.v);
        }();
        EXPECT_NEAR(std::abs(bs[0].data.v), limit_from_d1, 1e-4);
    }
}

TEST(Branches, RejectInsideDisk) {
    EXPECT_THROW(all_branches(0.5), DomainError);
    EXPECT_THROW(all_branches(Complex(0.6, 0.8)), DomainError);
}

TEST(RegionU, Examples) {
    EXPECT_TRUE(in_region_U(SpherePoint(2.0)));
    EXPECT_FALSE(in_region_U(SpherePoint(-2.0)));
    EXPECT_TRUE(in_region_U(SpherePoint::infinity()));
    EXPECT_THROW(in_region_U(SpherePoint(0.5)), DomainError);
}

TEST(GammaCurve, DefiningEquationAndUnitHalfTrace) {
    const auto pts = gamma_curve(200);
    ASSERT_EQ(pts.size(), 200u);
    for (Complex c : pts) {
        const double r = std::abs(c), t = std::arg(c);
        const double tt = t < 0 ? t + kTwoPi : t;
        EXPECT_GT(tt, kTwoPi / 3.0);
        EXPECT_LT(tt, 2.0 * kTwoPi / 3.0);
        EXPECT_NEAR(r + 1.0 / r + 4.0 * std::cos(t), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(half_trace(c)), 1.0, 1e-10);
    }
    const auto dense = gamma_curve(100000);
    EXPECT_LT(std::abs(dense.front() - std::polar(1.0, kTwoPi / 3.0)), 0.05);
    EXPECT_LT(std::abs(dense.back() - std::polar(1.0, -kTwoPi / 3.0)), 0.05);
    EXPECT_THROW(gamma_curve(1), DomainError);
}

TEST(PhiInverse, ExampleOneCaseTwo) {
    const auto B = phi_inverse(SpherePoint(2.0));
    EXPECT_NEAR(B.p().real(), 1.432575, 1e-5);
    EXPECT_NEAR(B.q().real(), 0.644348, 1e-5);
    EXPECT_EQ(B.angle(), 0.0);
}

TEST(PhiInverse, InfinityGivesThreeAndZero) {
    const auto B = phi_inverse(SpherePoint::infinity());
    EXPECT_EQ(B.p(), Complex(3.0, 0.0));
    EXPECT_EQ(B.q(), Complex(0.0, 0.0));
    for (double r : {1e3, 1e5, 1e7}) {
        const auto Br = phi_inverse(SpherePoint(r));
        EXPECT_LT(std::abs(Br.p() - 3.0), 10.0 / r);
        EXPECT_LT(std::abs(Br.q()), 10.0 / r);
    }
}

TEST(PhiInverse, OutsideUIsRejected) {
    EXPECT_THROW(phi_inverse(SpherePoint(-2.0)), OutOfRegion);
    EXPECT_THROW(phi_inverse(SpherePoint(0.5)), DomainError);
}

TEST(PhiInverse, CriticalPointsMatchCompanionOracle) {
    const auto B = phi_inverse(SpherePoint(2.0));
    const auto num = derivative_numerator(B.p(), B.q());
    const auto oracle = companion_roots({num.begin(), num.end()});
    const auto rep = verify_critical_points(B, SpherePoint(2.0));
    EXPECT_LT(rep.max_residual, 1e-8);
    EXPECT_LT(matched_distance(oracle, {1.0, 1.0, 2.0, 0.5}), 1e-6);
    EXPECT_LT(matched_distance(rep.roots, oracle), 1e-6);
}

TEST(PhiInverse, RandomParametersRoundTrip) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 100; ++i) {
        const Complex c = random_in_U(rng);
        const auto B = phi_inverse(SpherePoint(c));
        EXPECT_LT(verify_critical_points(B, SpherePoint(c)).max_residual, 1e-8) << c;
        EXPECT_LT(std::abs(blaschke_derivative(B, c)), 1e-8) << c;
        const SpherePoint back = free_critical_point(B);
        ASSERT_TRUE(back.is_finite());
        EXPECT_LT(std::abs(back.value() - c), 1e-8) << c;
    }
}

TEST(PhiInverse, MembersAreCircleHomeomorphisms) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 30; ++i) {
        const auto B = phi_inverse(SpherePoint(random_in_U(rng)));
        double min_value = 1e300;
        double min_away = 1e300;
        const int n = 4096;
        for (int k = 0; k < n; ++k) {
            const double a = kTwoPi * k / n;
            const double d = circle_derivative(B, a);
            min_value = std::min(min_value, d);
            if (a > 0.3 && a < kTwoPi - 0.3) min_away = std::min(min_away, d);
        }
        EXPECT_GE(min_value, -1e-10);
        EXPECT_GT(min_away, 1e-6);
    }
}

TEST(Polynomial, AberthAgreesWithCompanionOracle) {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t degree = 2 + trial % 7;
        std::vector<Complex> coeffs;
        for (std::size_t k = 0; k <= degree; ++k) coeffs.emplace_back(n(rng), n(rng));
        const auto roots = polynomial_roots(coeffs);
        EXPECT_LT(matched_distance(roots, companion_roots(coeffs)), 1e-8);
    }
}

TEST(Polynomial, HornerAndDerivative) {
    const std::vector<Complex> p{1.0, -3.0, 0.0, 2.0};
    EXPECT_EQ(horner(p, 2.0), Complex(11.0, 0.0));
    const auto d = differentiate(p);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d[0], Complex(-3.0, 0.0));
    EXPECT_EQ(d[2], Complex(6.0, 0.0));
}
