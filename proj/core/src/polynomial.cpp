#include "siegel/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kClusterRadius = 1e-5;

std::vector<Complex> trimmed(std::span<const Complex> coeffs) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    double scale = 0.0;
    for (const auto& x : c) scale = std::max(scale, std::abs(x));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    return c;
}

Complex newton_refine(std::span<const Complex> f, Complex z) {
    const auto df = differentiate(f);
    for (int i = 0; i < 50; ++i) {
        const Complex d = horner(df, z);
        if (d == Complex{}) break;
        const Complex step = horner(f, z) / d;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

} // namespace

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<Complex> differentiate(std::span<const Complex> coeffs, unsigned k) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    for (unsigned pass = 0; pass < k; ++pass) {
        if (c.size() <= 1) return {Complex{}};
        std::vector<Complex> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
        c = std::move(d);
    }
    return c;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
    auto c = trimmed(coeffs);
    std::vector<Complex> roots;
    // Exact zero roots first.
    std::size_t zeros = 0;
    while (zeros + 1 < c.size() && c[zeros] == Complex{}) ++zeros;
    roots.assign(zeros, Complex{});
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
    const std::size_t n = c.size() - 1;
    if (n == 0) return roots;

    const auto dc = differentiate(c);
    // Initial guesses on a circle at the geometric mean of the root moduli,
    // rotated off the real axis.
    const double radius = std::max(1e-3, std::pow(std::abs(c[0] / c[n]), 1.0 / static_cast<double>(n)));
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.25) / n + 0.4);
    }

    bool converged = false;
    for (int it = 0; it < kMaxIterations && !converged; ++it) {
        converged = true;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex pz = horner(c, z[k]);
            if (pz == Complex{}) continue;
            const Complex ratio = pz / horner(dc, z[k]);
            Complex repulsion{};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            z[k] -= step;
            if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[k]))) converged = false;
        }
    }
    if (!converged) {
        // Multiple roots slow Aberth down to linear convergence; accept once
        // the residuals are at rounding level.
        double scale = 0.0;
        for (const auto& x : c) scale = std::max(scale, std::abs(x));
        for (const auto& r : z) {
            if (std::abs(horner(c, r)) > 1e-10 * scale * std::max(1.0, std::pow(std::abs(r), n))) {
                throw ConvergenceError("polynomial root finder did not converge");
            }
        }
    }

    // Merge clusters into multiple roots and refine them.
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        if (used[k]) continue;
        std::vector<std::size_t> cluster{k};
        used[k] = true;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (!used[j] && std::abs(z[j] - z[k]) < kClusterRadius * std::max(1.0, std::abs(z[k]))) {
                cluster.push_back(j);
                used[j] = true;
            }
        }
        Complex mean{};
        for (auto j : cluster) mean += z[j];
        mean /= static_cast<double>(cluster.size());
        const auto m = static_cast<unsigned>(cluster.size());
        const Complex refined =
            m == 1 ? newton_refine(c, mean) : newton_refine(differentiate(c, m - 1), mean);
        // Keep the refinement only if it did not wander off.
        const Complex root = std::abs(refined - mean) < kClusterRadius ? refined : mean;
        roots.insert(roots.end(), m, root);
    }
    return roots;
}

} // namespace siegel
