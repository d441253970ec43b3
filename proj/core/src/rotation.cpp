#include "siegel/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "siegel/errors.hpp"
#include "siegel/format.hpp"

namespace siegel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kHomeomorphismGrid = 4096;

double arg_of(Complex z) { return std::atan2(z.imag(), z.real()); }

/// Position on the lifted line kept as integer turns plus a remainder in [0, 2 pi).
struct LiftedPoint {
    std::int64_t turns = 0;
    double r = 0.0;

    static LiftedPoint from(double x) {
        const double k = std::floor(x / kTwoPi);
        LiftedPoint p{static_cast<std::int64_t>(k), x - k * kTwoPi};
        p.normalize();
        return p;
    }
    void normalize() {
        const double k = std::floor(r / kTwoPi);
        if (k != 0.0) {
            turns += static_cast<std::int64_t>(k);
            r -= k * kTwoPi;
        }
        if (r < 0.0) r = 0.0;
    }
};

double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

} // namespace

CircleMapLift::CircleMapLift(CircleMap map) : map_(std::move(map)) {
    if (const auto* rot = std::get_if<RigidRotation>(&map_)) {
        rigid_ = true;
        offset_ = kTwoPi * rot->theta;
    } else {
        const auto& B = std::get<BlaschkeProduct>(map_);
        offset_ = B.angle() + 2.0 * arg_of(B.p());
        q_conj_ = std::conj(B.q());
        p_inv_ = 1.0 / B.p();
    }
}

double CircleMapLift::displacement(double x) const {
    if (rigid_) return offset_;
    const Complex e = std::polar(1.0, x);
    return offset_ - 2.0 * arg_of(1.0 - q_conj_ * e) + 2.0 * arg_of(1.0 - p_inv_ * e);
}

double CircleMapLift::inverse(double y) const {
    if (rigid_) return y - offset_;
    double lo = y - displacement(y) - kTwoPi;
    double hi = y - displacement(y) + kTwoPi;
    for (int grow = 0; (*this)(lo) > y; ++grow) {
        if (grow > 8) throw ConvergenceError("inverse lift: no lower bracket");
        lo -= kTwoPi;
    }
    for (int grow = 0; (*this)(hi) < y; ++grow) {
        if (grow > 8) throw ConvergenceError("inverse lift: no upper bracket");
        hi += kTwoPi;
    }
    for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(y));
         ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double CircleMapLift::iterate(double x, std::int64_t k) const {
    LiftedPoint p = LiftedPoint::from(x);
    if (k >= 0) {
        for (std::int64_t i = 0; i < k; ++i) {
            p.r = (*this)(p.r);
            p.normalize();
        }
    } else {
        for (std::int64_t i = 0; i < -k; ++i) {
            p.r = inverse(p.r);
            p.normalize();
        }
    }
    return static_cast<double>(p.turns) * kTwoPi + p.r;
}

void require_circle_homeomorphism(const CircleMap& map) {
    const auto* B = std::get_if<BlaschkeProduct>(&map);
    if (B == nullptr) return;
    for (std::size_t k = 0; k < kHomeomorphismGrid; ++k) {
        const double alpha = kTwoPi * static_cast<double>(k) / kHomeomorphismGrid;
        if (circle_derivative(*B, alpha) < -1e-10) {
            throw DomainError("circle map is not an orientation-preserving homeomorphism");
        }
    }
}

RotationEstimate rotation_number(const CircleMap& map, double x0, std::int64_t n) {
    if (n <= 0) throw DomainError("rotation number needs n >= 1 iterates");
    require_circle_homeomorphism(map);
    const CircleMapLift F(map);
    const LiftedPoint start = LiftedPoint::from(x0);
    LiftedPoint p = start;
    auto advance = [&] {
        for (std::int64_t i = 0; i < n; ++i) {
            p.r = F(p.r);
            p.normalize();
        }
        return static_cast<double>(p.turns - start.turns) + (p.r - start.r) / kTwoPi;
    };
    const double total_n = advance();
    const double total_2n = advance();
    RotationEstimate est;
    est.birkhoff = total_n / static_cast<double>(n);
    const double r2n = total_2n / (2.0 * static_cast<double>(n));
    est.lifted = 2.0 * r2n - est.birkhoff;
    est.rho = est.lifted - std::floor(est.lifted);
    if (est.rho >= 1.0) est.rho = 0.0;
    est.error_bound = 2.0 / static_cast<double>(n);
    est.iterations = 2 * n;
    return est;
}

TuneResult tune_prefactor(Complex p, Complex q, const RotationNumber& theta, double tol,
                          const TuneOptions& options) {
    if (theta.is_rational()) throw DomainError("rotation number tuning needs an irrational theta");
    if (!(tol >= 1e-6)) throw DomainError("tuning tolerance must be >= 1e-6");
    const BlaschkeProduct base(p, q, 0.0);
    require_circle_homeomorphism(base);

    const std::int64_t n_search =
        options.search_iterations > 0
            ? options.search_iterations
            : std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(20.0 / tol)), 10'000,
                                       std::max<std::int64_t>(10'000, options.final_iterations));
    auto lifted_at = [&](double t) { return rotation_number(base.with_angle(t), options.x0, n_search).lifted; };

    // The lifted estimate is monotone in t by construction: F_t = F_0 + t.
    {
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 8; ++k) {
            const double r = rotation_number(base.with_angle(kTwoPi * k / 8.0), options.x0, 2'000).birkhoff;
            if (r < prev - 1e-12) throw DomainError("rotation number is not monotone in the prefactor");
            prev = r;
        }
    }

    TuneResult out;
    const double target_theta = theta.value();
    const double r0 = lifted_at(0.0);
    const double nearest = std::round(r0 - target_theta);
    double lo = 0.0, hi = kTwoPi;
    if (std::abs(r0 - target_theta - nearest) <= 0.5 * tol) {
        out.t = 0.0;
        out.bracket = {0.0, 0.0};
    } else {
        const double target = target_theta + std::ceil(r0 - target_theta);
        bool found = false;
        for (int depth = 0; depth < options.max_depth; ++depth) {
            const double mid = 0.5 * (lo + hi);
            const double r = lifted_at(mid);
            ++out.iterations;
            if (std::abs(r - target) <= 0.5 * tol) {
                out.t = mid;
                found = true;
                break;
            }
            if (r < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!found) {
            std::ostringstream msg;
            msg << "prefactor bisection did not converge; bracket [" << format_number(lo) << ", "
                << format_number(hi) << "]";
            throw ConvergenceError(msg.str());
        }
        out.bracket = {lo, hi};
    }
    if (out.t >= kTwoPi) out.t -= kTwoPi;
    out.rho = rotation_number(base.with_angle(out.t), options.x0, options.final_iterations).rho;
    return out;
}

ComparabilityReport comparability_report(const CircleMap& G, const RotationNumber& theta, std::size_t n_max,
                                         std::size_t samples) {
    ComparabilityReport rep;
    if (samples == 0 || n_max == 0) return rep;
    require_circle_homeomorphism(G);
    const CircleMapLift F(G);
    const auto conv = theta.convergents(n_max + 1);
    if (conv.truncated) throw DomainError("rotation number expansion is too short for n_max");
    for (std::size_t n = 1; n <= n_max; ++n) {
        ComparabilityRow row;
        row.n = n;
        row.q_n = conv.values[n - 1].q;
        row.q_next = conv.values[n].q;
        row.backward_min = row.next_min = std::numeric_limits<double>::infinity();
        row.backward_max = row.next_max = 0.0;
        for (std::size_t j = 0; j < samples; ++j) {
            const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
            double fwd = 0.0, back = 0.0, next = 0.0;
            try {
                fwd = chord(F.iterate(x, row.q_n), x);
                back = chord(F.iterate(x, -row.q_n), x);
                next = chord(F.iterate(x, row.q_next), x);
            } catch (const ConvergenceError&) {
                ++row.flagged;
                continue;
            }
            if (!(fwd > 0.0)) {
                ++row.flagged;
                continue;
            }
            const double r1 = back / fwd;
            const double r2 = next / fwd;
            row.backward_min = std::min(row.backward_min, r1);
            row.backward_max = std::max(row.backward_max, r1);
            row.next_min = std::min(row.next_min, r2);
            row.next_max = std::max(row.next_max, r2);
        }
        if (row.flagged < samples) {
            for (double r : {row.backward_min, row.backward_max, row.next_min, row.next_max}) {
                if (r > 0.0) rep.K = std::max({rep.K, r, 1.0 / r});
                else rep.K = std::numeric_limits<double>::infinity();
            }
        }
        rep.flagged += row.flagged;
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<int> closest_return_sides(const CircleMap& G, const RotationNumber& theta, std::size_t n_max) {
    const CircleMapLift F(G);
    const auto conv = theta.convergents(n_max);
    std::vector<int> out;
    for (const auto& c : conv.values) {
        const double y = F.iterate(0.0, c.q);
        const double wrapped = std::remainder(y, kTwoPi);  // in [-pi, pi]
        out.push_back(wrapped > 0.0 ? 1 : (wrapped < 0.0 ? -1 : 0));
    }
    return out;
}

} // namespace siegel
