#include "siegel/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

constexpr double kResidualFloor = 1e-14;
// A reciprocal this close (relative) to an integer ends the expansion: the
// input is rational up to rounding.
constexpr double kIntegerSnap = 1e-12;
// Beyond this propagated error on the residual, the next partial quotient is
// no longer determined by the double we started from.
constexpr double kErrorCeiling = 1e-6;

} // namespace

Expansion expand(double theta, std::size_t depth) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw DomainError("continued fraction needs theta in (0,1), got " + std::to_string(theta));
    }
    if (depth == 0) throw DomainError("continued fraction depth must be at least 1");
    Expansion out;
    out.terms.reserve(depth);
    double x = theta;
    double err = std::numeric_limits<double>::epsilon() * theta;
    while (out.terms.size() < depth) {
        const double inv = 1.0 / x;
        const double inv_err = err * inv * inv + std::numeric_limits<double>::epsilon() * inv;
        const double nearest = std::round(inv);
        if (std::abs(inv - nearest) <= std::max(kIntegerSnap * inv, kResidualFloor)) {
            out.terms.push_back(static_cast<std::int64_t>(nearest));
            out.terminated = true;
            break;
        }
        const double a = std::floor(inv);
        if (std::floor(inv - inv_err) != std::floor(inv + inv_err)) break;
        out.terms.push_back(static_cast<std::int64_t>(a));
        x = inv - a;
        err = inv_err;
        if (err > kErrorCeiling) break;
    }
    return out;
}

std::vector<std::int64_t> continued_fraction(double theta, std::size_t depth) {
    return expand(theta, depth).terms;
}

ConvergentList convergents(std::span<const std::int64_t> cf, std::size_t n) {
    if (cf.empty()) throw DomainError("convergents of an empty continued fraction");
    ConvergentList out;
    out.truncated = n > cf.size();
    const std::size_t count = std::min(n, cf.size());
    out.values.reserve(count);
    // theta = [a_1, a_2, ...] in (0,1): p_0/q_0 = 0/1, p_{-1}/q_{-1} = 1/0.
    std::int64_t p_prev = 1, q_prev = 0;
    std::int64_t p = 0, q = 1;
    for (std::size_t k = 0; k < count; ++k) {
        const std::int64_t a = cf[k];
        const std::int64_t p_next = a * p + p_prev;
        const std::int64_t q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        out.values.push_back({p, q});
    }
    return out;
}

bool is_bounded_type(std::span<const std::int64_t> cf, std::int64_t bound) {
    if (cf.empty()) throw DomainError("bounded-type test on an empty continued fraction");
    return *std::max_element(cf.begin(), cf.end()) <= bound;
}

double fold(std::span<const std::int64_t> cf) {
    double x = 0.0;
    for (auto it = cf.rbegin(); it != cf.rend(); ++it) x = 1.0 / (static_cast<double>(*it) + x);
    return x;
}

RotationNumber::RotationNumber(double value, std::vector<std::int64_t> cf, bool rational)
    : value_(value), cf_(std::move(cf)), rational_(rational) {
    bound_ = cf_.empty() ? 0 : *std::max_element(cf_.begin(), cf_.end());
}

RotationNumber RotationNumber::from_value(double theta, std::size_t depth) {
    auto e = expand(theta, depth);
    return RotationNumber(theta, std::move(e.terms), e.terminated);
}

RotationNumber RotationNumber::from_terms(std::vector<std::int64_t> terms) {
    if (terms.empty()) throw DomainError("rotation number needs at least one partial quotient");
    for (auto a : terms) {
        if (a < 1) throw DomainError("partial quotients must be >= 1");
    }
    const double v = fold(terms);
    return RotationNumber(v, std::move(terms), false);
}

RotationNumber RotationNumber::golden_mean() {
    return from_value((std::sqrt(5.0) - 1.0) / 2.0);
}

ConvergentList RotationNumber::convergents(std::size_t n) const {
    return siegel::convergents(cf_, n);
}

std::int64_t RotationNumber::denominator(std::size_t n) const {
    if (n == 0 || n > cf_.size()) {
        throw DomainError("q_" + std::to_string(n) + " is beyond the computed expansion");
    }
    return convergents(n).values.back().q;
}

} // namespace siegel
