#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <siegel/boundary.hpp>
#include <siegel/errors.hpp>
#include <siegel/moebius.hpp>
#include <siegel/quadratic_map.hpp>

using namespace siegel;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const RotationNumber kGolden = RotationNumber::golden_mean();

BoundaryCurve synthetic_curve(std::size_t n, const std::function<Complex(double)>& shape) {
    std::vector<BoundarySample> s;
    for (std::size_t k = 0; k < n; ++k) {
        const double phi = static_cast<double>(k) / static_cast<double>(n);
        s.push_back({phi, shape(phi), k});
    }
    return BoundaryCurve(std::move(s), SpherePoint::infinity(), 0.0);
}

double frac(double x) { return x - std::floor(x); }

} // namespace

TEST(BoundaryOrbit, PolynomialCurveIsBounded) {
    const auto curve = boundary_orbit(SpherePoint::infinity(), kGolden, 10000);
    ASSERT_EQ(curve.size(), 10000u);
    double max_mod = 0.0;
    for (const auto& s : curve.samples()) max_mod = std::max(max_mod, std::abs(s.point));
    EXPECT_LT(max_mod, 4.0);
}

TEST(BoundaryOrbit, SingleSample) {
    const auto curve = boundary_orbit(SpherePoint(2.0), kGolden, 1);
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_EQ(curve.samples()[0].point, Complex(1.0, 0.0));
    EXPECT_EQ(curve.samples()[0].angle, 0.0);
    EXPECT_EQ(curve.samples()[0].index, 0u);
}

TEST(BoundaryOrbit, DegenerateAndEmptyRejected) {
    EXPECT_THROW(boundary_orbit(SpherePoint(0.0), kGolden, 10), DegenerateParameter);
    EXPECT_THROW(boundary_orbit(SpherePoint::infinity(), kGolden, 0), DomainError);
}

TEST(BoundaryOrbit, EscapeNamesIterate) {
    try {
        boundary_orbit(SpherePoint(0.5), kGolden, 1000);
        FAIL() << "expected OrbitError";
    } catch (const OrbitError& e) {
        EXPECT_EQ(e.kind(), OrbitError::Kind::escaped);
        EXPECT_GT(e.iterate(), 0u);
        EXPECT_NE(std::string(e.what()).find(std::to_string(e.iterate())), std::string::npos);
    }
}

TEST(BoundaryOrbit, FiniteOrbitDetected) {
    // For c = lambda / (2 - lambda) the point 1 is fixed: g(1) = (a + lambda) / (b + 1) = 1.
    const Complex lam = multiplier_of(kGolden.value());
    const Complex c = lam / (2.0 - lam);
    const auto g = make_map(c, kGolden);
    ASSERT_LT(std::abs(g(SpherePoint(1.0)).value() - 1.0), 1e-14);
    try {
        boundary_orbit(c, kGolden, 10);
        FAIL() << "expected OrbitError";
    } catch (const OrbitError& e) {
        EXPECT_EQ(e.kind(), OrbitError::Kind::collapsed);
        EXPECT_EQ(e.iterate(), 1u);
    }
}

TEST(BoundaryOrbit, SortedAndEquivariant) {
    for (const SpherePoint c : {SpherePoint::infinity(), SpherePoint(Complex(3.0, 1.0))}) {
        const auto g = make_map(c, kGolden);
        const std::size_t N = 3000;
        const auto curve = boundary_orbit(c, kGolden, N);
        const auto s = curve.samples();
        for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i - 1].angle, s[i].angle);
        for (std::size_t k = 0; k + 1 < N; ++k) {
            const BoundarySample* a = curve.by_index(k);
            const BoundarySample* b = curve.by_index(k + 1);
            ASSERT_NE(a, nullptr);
            ASSERT_NE(b, nullptr);
            EXPECT_EQ(g(SpherePoint(a->point)).value(), b->point);
            double shift = frac(a->angle + kGolden.value()) - b->angle;
            shift -= std::round(shift);
            EXPECT_LT(std::abs(shift), 1e-11);
        }
        EXPECT_EQ(curve.by_index(N), nullptr);
    }
}

TEST(CrossRatio, HandValueWithLargeSurrogate) {
    // (0, 1, L, i) tends to ((-L)(1 - i)) / ((1 - L)(-i)) -> 1 + i as L grows.
    const double L = 1e8;
    const Complex v = cross_ratio(0.0, 1.0, L, Complex(0.0, 1.0));
    const Complex hand = (Complex(-L, 0.0) * Complex(1.0, -1.0)) / (Complex(1.0 - L, 0.0) * Complex(0.0, -1.0));
    EXPECT_LT(std::abs(v - hand), 1e-14);
    EXPECT_LT(std::abs(v - Complex(1.0, 1.0)), 1e-7);
}

TEST(CrossRatio, MoebiusInvariance) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    auto rc = [&] { return Complex(n(rng), n(rng)); };
    for (int i = 0; i < 100; ++i) {
        const MoebiusMap m(rc(), rc(), rc(), rc());
        std::array<Complex, 4> z{rc(), rc(), rc(), rc()};
        std::array<SpherePoint, 4> w;
        bool finite = true;
        for (int k = 0; k < 4; ++k) {
            w[k] = m(z[k]);
            finite = finite && w[k].is_finite() && std::abs(w[k].value()) < 1e6;
        }
        if (!finite) continue;
        const Complex before = cross_ratio(z[0], z[1], z[2], z[3]);
        const Complex after = cross_ratio(w[0].value(), w[1].value(), w[2].value(), w[3].value());
        EXPECT_LT(std::abs(before - after) / std::max(1.0, std::abs(before)), 1e-10);
    }
}

TEST(CrossRatio, PairSwapSymmetryAndCoincidence) {
    const Complex a(0.3, 1.0), b(-1.0, 0.2), c(2.0, -0.5), d(0.1, 0.1);
    EXPECT_LT(std::abs(cross_ratio(a, b, c, d) - cross_ratio(b, a, d, c)), 1e-14);
    EXPECT_THROW(cross_ratio(a, a, c, d), DomainError);
    EXPECT_THROW(cross_ratio(a, b, c, c), DomainError);
}

TEST(CrossRatio, CircleValuesSatisfyPtolemy) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 4> t{u(rng), u(rng), u(rng), u(rng)};
        std::sort(t.begin(), t.end());
        const Complex v = cross_ratio(std::polar(1.0, kTwoPi * t[0]), std::polar(1.0, kTwoPi * t[1]),
                                      std::polar(1.0, kTwoPi * t[2]), std::polar(1.0, kTwoPi * t[3]));
        EXPECT_GE(std::abs(v), 1.0 - 1e-9);
    }
}

TEST(Lambda, LimitAtOneIsRotationCrossRatio) {
    const Complex alpha = rotation_cross_ratio(kGolden.value(), 0, 1, 2, 3);
    EXPECT_EQ(lambda_fn(SpherePoint(1.0), kGolden, 0, 1, 2, 3), alpha);
    EXPECT_EQ(lambda_fn(SpherePoint(-1.0), kGolden, 0, 1, 2, 3), alpha);
    double previous = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double d = std::abs(lambda_fn(SpherePoint(1.0 + eps), kGolden, 0, 1, 2, 3) - alpha);
        EXPECT_LT(d, previous);
        previous = d;
    }
    EXPECT_LT(std::abs(lambda_fn(SpherePoint(1.0 + 1e-3), kGolden, 0, 1, 2, 3) - alpha), 1e-2);
    EXPECT_LT(std::abs(lambda_fn(SpherePoint(1.0 - 1e-3), kGolden, 0, 1, 2, 3) - alpha), 1e-2);
}

TEST(Lambda, PolynomialValueMatchesOrbitComposition) {
    const auto g = make_map(SpherePoint::infinity(), kGolden);
    const Orbit o = orbit(g, SpherePoint(1.0), 3);
    const Complex direct =
        cross_ratio(o.points[0].value(), o.points[1].value(), o.points[2].value(), o.points[3].value());
    const Complex v = lambda_fn(SpherePoint::infinity(), kGolden, 0, 1, 2, 3);
    EXPECT_EQ(v, direct);
    EXPECT_TRUE(std::isfinite(std::abs(v)));
    EXPECT_GT(std::abs(v), 0.0);
}

TEST(Lambda, ErrorsOnBadIndicesAndFiniteOrbit) {
    EXPECT_THROW(lambda_fn(SpherePoint::infinity(), kGolden, 0, 2, 1, 3), DomainError);
    const Complex lam = multiplier_of(kGolden.value());
    EXPECT_THROW(lambda_fn(SpherePoint(lam / (2.0 - lam)), kGolden, 0, 1, 2, 3), OrbitError);
}

TEST(Quadruples, DistinctOrderedAndDeterministic) {
    const auto a = sample_ordered_quadruples(50, 500, 9);
    const auto b = sample_ordered_quadruples(50, 500, 9);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_ordered_quadruples(50, 500, 10));
    for (const auto& q : a) {
        int descents = 0;
        for (int i = 0; i < 4; ++i) {
            EXPECT_LT(q[i], 50u);
            if (q[(i + 1) % 4] < q[i]) ++descents;
        }
        EXPECT_EQ(descents, 1);
    }
    EXPECT_THROW(sample_ordered_quadruples(3, 10, 1), DomainError);
}

TEST(Quasicircle, RoundCircleMatchesExactValues) {
    const std::size_t N = 2000;
    const auto curve = boundary_orbit(SpherePoint::infinity(), kGolden, N);
    std::vector<BoundarySample> round;
    for (const auto& s : curve.samples()) round.push_back({s.angle, std::polar(1.0, kTwoPi * s.angle), s.index});
    const BoundaryCurve circle(round, SpherePoint::infinity(), kGolden.value());
    const auto rep = quasicircle_delta(circle, 5000, 17);
    double exact_min = 1e300;
    for (const auto& q : sample_ordered_quadruples(N, 5000, 17)) {
        std::array<Complex, 4> z;
        for (int i = 0; i < 4; ++i) z[i] = std::polar(1.0, kTwoPi * circle.samples()[q[i]].angle);
        exact_min = std::min(exact_min, std::abs(cross_ratio(z[0], z[1], z[2], z[3])));
    }
    EXPECT_NEAR(rep.min_abs, exact_min, 1e-12);
    EXPECT_GE(rep.min_abs, 1.0 - 1e-9);
    EXPECT_EQ(rep.quadruples_tested, 5000u);
}

TEST(Quasicircle, PinchedCurveNearZero) {
    const auto pinched = synthetic_curve(4000, [](double phi) {
        const double x = std::cos(kTwoPi * phi), y = std::sin(kTwoPi * phi);
        return Complex(x, std::abs(x) < 0.5 ? 1e-4 * y : y);
    });
    EXPECT_LT(quasicircle_delta(pinched, 10000, 1).min_abs, 0.01);
}

TEST(Quasicircle, PolynomialBoundaryStableAcrossSeeds) {
    const auto curve = boundary_orbit(SpherePoint::infinity(), kGolden, 10000);
    const double a = quasicircle_delta(curve, 10000, 1).min_abs;
    const double b = quasicircle_delta(curve, 10000, 2).min_abs;
    EXPECT_GT(a, 0.0);
    EXPECT_GT(b, 0.0);
    EXPECT_LT(std::abs(a - b), 0.2 * std::max(a, b));
}

TEST(Quasicircle, NeedsFourSamples) {
    const auto curve = boundary_orbit(SpherePoint::infinity(), kGolden, 3);
    EXPECT_THROW(quasicircle_delta(curve, 10, 1), DomainError);
}

TEST(InnerAngle, PolynomialHasNone) {
    EXPECT_FALSE(inner_angle(SpherePoint::infinity(), kGolden, 1000).has_value());
}

TEST(InnerAngle, OrbitPointQueryReturnsItsAngle) {
    const auto curve = boundary_orbit(SpherePoint(Complex(3.0, 1.0)), kGolden, 2000);
    const BoundarySample* s = curve.by_index(7);
    ASSERT_NE(s, nullptr);
    const auto angle = inner_angle(curve, s->point);
    ASSERT_TRUE(angle.has_value());
    EXPECT_NEAR(*angle, frac(7.0 * kGolden.value()), 1e-12);
    EXPECT_FALSE(inner_angle(curve, Complex(50.0, 50.0)).has_value());
}

TEST(InnerAngle, ParameterFarFromCurveHasNone) {
    EXPECT_FALSE(inner_angle(SpherePoint(10.0), kGolden, 2000).has_value());
}

TEST(XiScan, StatusesAndDistances) {
    const std::vector<SpherePoint> grid{SpherePoint::infinity(), SpherePoint(10.0), SpherePoint(Complex(0.0, 10.0)),
                                        SpherePoint(1.0), SpherePoint(0.5)};
    const auto out = xi_scan(grid, kGolden, 2000);
    ASSERT_EQ(out.size(), grid.size());
    EXPECT_EQ(out[0].status, ScanStatus::infinite);
    EXPECT_TRUE(std::isinf(out[0].distance));
    EXPECT_EQ(out[1].status, ScanStatus::ok);
    EXPECT_GT(out[1].distance, 1.0);
    EXPECT_EQ(out[2].status, ScanStatus::ok);
    EXPECT_GT(out[2].distance, 1.0);
    EXPECT_EQ(out[3].status, ScanStatus::degenerate);
    EXPECT_EQ(out[4].status, ScanStatus::escaped);
    EXPECT_FALSE(out[4].message.empty());
}

TEST(XiScan, ReflectionConsistency) {
    const double small = 0.05;
    for (Complex c : {Complex(10.0, 0.0), Complex(3.0, 4.0), Complex(-3.0, 0.5), Complex(1.5, 1.5)}) {
        const std::vector<SpherePoint> grid{SpherePoint(c), SpherePoint(1.0 / c)};
        const auto out = xi_scan(grid, kGolden, 2000);
        auto is_small = [&](const XiScanEntry& e) { return e.status == ScanStatus::ok && e.distance < small; };
        EXPECT_EQ(is_small(out[0]), is_small(out[1])) << c;
    }
}

TEST(XiScan, IndependentOfThreadCount) {
    std::vector<SpherePoint> grid;
    for (int i = 0; i < 12; ++i) grid.emplace_back(std::polar(1.5 + 0.3 * i, 0.5 * i));
    setenv("SIEGEL_LAB_THREADS", "1", 1);
    const auto one = xi_scan(grid, kGolden, 500);
    setenv("SIEGEL_LAB_THREADS", "4", 1);
    const auto four = xi_scan(grid, kGolden, 500);
    unsetenv("SIEGEL_LAB_THREADS");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(one[i].status, four[i].status);
        EXPECT_EQ(one[i].distance, four[i].distance);
    }
}

TEST(GridCsv, ReadsHeaderCommentsAndInfinity) {
    std::istringstream in("re,im\n# comment\n2,0\n\ninf\n-1.5, 0.25\r\n");
    const auto grid = read_grid_csv(in);
    ASSERT_EQ(grid.size(), 3u);
    EXPECT_EQ(grid[0], SpherePoint(2.0));
    EXPECT_TRUE(grid[1].is_infinite());
    EXPECT_EQ(grid[2], SpherePoint(Complex(-1.5, 0.25)));
    std::istringstream bad("1,2\nfoo,bar\n");
    EXPECT_THROW(read_grid_csv(bad), DomainError);
}

TEST(GridCsv, WritesScanAndBoundary) {
    std::vector<XiScanEntry> entries(2);
    entries[0] = {SpherePoint(Complex(2.0, -1.0)), 0.5, ScanStatus::ok, ""};
    entries[1] = {SpherePoint::infinity(), std::numeric_limits<double>::infinity(), ScanStatus::infinite, "x"};
    std::ostringstream os;
    write_xi_scan_csv(os, entries);
    EXPECT_EQ(os.str(), "re,im,distance,status\n2,-1,0.5,ok\ninf,inf,inf,infinite\n");
    std::ostringstream bs;
    write_boundary_csv(bs, boundary_orbit(SpherePoint::infinity(), kGolden, 1));
    EXPECT_EQ(bs.str(), "angle,re,im\n0,1,0\n");
}
