#include "siegel/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "siegel/errors.hpp"
#include "siegel/format.hpp"
#include "siegel/parallel.hpp"
#include "siegel/quadratic_map.hpp"

namespace siegel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fractional_angle(std::size_t k, double theta) {
    const double x = static_cast<double>(k) * theta;
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

/// Unbiased draw from [0, n) by rejection.
std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    return static_cast<std::size_t>(r % bound);
}

/// Throws OrbitError naming the later iterate of the first pair of orbit
/// points closer than the collision distance.
void check_collisions(std::span<const Complex> pts) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].real() < pts[b].real();
    });
    std::size_t worst = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const Complex a = pts[order[i]];
            const Complex b = pts[order[j]];
            if (b.real() - a.real() > kCollisionDistance) break;
            if (std::abs(a - b) <= kCollisionDistance) {
                worst = std::min(worst, std::max(order[i], order[j]));
            }
        }
    }
    if (worst != std::numeric_limits<std::size_t>::max()) {
        throw OrbitError("critical orbit is finite: iterate " + std::to_string(worst) +
                             " coincides with an earlier iterate",
                         worst, OrbitError::Kind::collapsed);
    }
}

} // namespace

BoundaryCurve::BoundaryCurve(std::vector<BoundarySample> samples, SpherePoint c, double theta)
    : samples_(std::move(samples)), c_(c), theta_(theta) {
    std::stable_sort(samples_.begin(), samples_.end(),
                     [](const BoundarySample& a, const BoundarySample& b) { return a.angle < b.angle; });
    std::size_t max_index = 0;
    for (const auto& s : samples_) max_index = std::max(max_index, s.index);
    position_of_index_.assign(samples_.empty() ? 0 : max_index + 1, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < samples_.size(); ++i) position_of_index_[samples_[i].index] = i;
}

const BoundarySample* BoundaryCurve::by_index(std::size_t k) const {
    if (k >= position_of_index_.size()) return nullptr;
    const std::size_t pos = position_of_index_[k];
    if (pos == std::numeric_limits<std::size_t>::max()) return nullptr;
    return &samples_[pos];
}

BoundaryCurve boundary_orbit(const SpherePoint& c, const RotationNumber& theta, std::size_t N) {
    if (N == 0) throw DomainError("boundary_orbit needs at least one sample");
    const auto g = make_map(c, theta);
    std::vector<Complex> pts;
    pts.reserve(N);
    SpherePoint z(1.0);
    for (std::size_t k = 0; k < N; ++k) {
        if (z.is_infinite()) {
            throw OrbitError("critical orbit reaches infinity at iterate " + std::to_string(k), k);
        }
        const Complex w = z.value();
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > kEscapeRadius) {
            throw OrbitError("critical orbit escapes at iterate " + std::to_string(k), k);
        }
        pts.push_back(w);
        if (k + 1 < N) z = g(z);
    }
    check_collisions(pts);
    std::vector<BoundarySample> samples(N);
    for (std::size_t k = 0; k < N; ++k) samples[k] = {fractional_angle(k, theta.value()), pts[k], k};
    return BoundaryCurve(std::move(samples), c, theta.value());
}

Complex cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4) {
    const Complex d13 = z1 - z3, d24 = z2 - z4, d23 = z2 - z3, d14 = z1 - z4;
    if (z1 == z2 || z1 == z3 || z1 == z4 || z2 == z3 || z2 == z4 || z3 == z4) {
        throw DomainError("cross ratio of coincident points");
    }
    return (d13 * d24) / (d23 * d14);
}

Complex rotation_cross_ratio(double theta, std::size_t k, std::size_t l, std::size_t m, std::size_t n) {
    auto at = [theta](std::size_t j) { return std::polar(1.0, kTwoPi * fractional_angle(j, theta)); };
    return cross_ratio(at(k), at(l), at(m), at(n));
}

Complex lambda_fn(const SpherePoint& c, const RotationNumber& theta, std::size_t k, std::size_t l, std::size_t m,
                  std::size_t n) {
    if (!(k < l && l < m && m < n)) throw DomainError("lambda needs indices k < l < m < n");
    if (c.is_finite()) {
        const Complex cv = c.value();
        if (std::abs(cv - 1.0) <= QuadraticSiegelMap::kDegenerateRadius ||
            std::abs(cv + 1.0) <= QuadraticSiegelMap::kDegenerateRadius) {
            return rotation_cross_ratio(theta.value(), k, l, m, n);
        }
    }
    const auto g = make_map(c, theta);
    const Orbit o = orbit(g, SpherePoint(1.0), n + 1);
    const std::array<std::size_t, 4> idx{k, l, m, n};
    std::array<Complex, 4> z{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (idx[i] >= o.points.size() || o.points[idx[i]].is_infinite()) {
            throw OrbitError("critical orbit reaches infinity before iterate " + std::to_string(idx[i]), idx[i]);
        }
        z[i] = o.points[idx[i]].value();
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (std::abs(z[i] - z[j]) <= kCollisionDistance) {
                throw OrbitError("critical orbit collision between iterates " + std::to_string(idx[i]) + " and " +
                                     std::to_string(idx[j]),
                                 idx[j], OrbitError::Kind::collapsed);
            }
        }
    }
    return cross_ratio(z[0], z[1], z[2], z[3]);
}

std::vector<Quadruple> sample_ordered_quadruples(std::size_t n_samples, std::size_t trials, std::uint64_t seed) {
    if (n_samples < 4) throw DomainError("need at least 4 samples to form a quadruple");
    std::mt19937_64 rng(seed);
    std::vector<Quadruple> out;
    out.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        Quadruple q{};
        for (std::size_t i = 0; i < 4; ++i) {
            for (;;) {
                const std::size_t cand = draw_below(rng, n_samples);
                if (std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i), cand) ==
                    q.begin() + static_cast<std::ptrdiff_t>(i)) {
                    q[i] = cand;
                    break;
                }
            }
        }
        std::sort(q.begin(), q.end());
        std::rotate(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(draw_below(rng, 4)), q.end());
        out.push_back(q);
    }
    return out;
}

CrossRatioReport quasicircle_delta(const BoundaryCurve& curve, std::size_t trials, std::uint64_t seed) {
    const auto samples = curve.samples();
    if (samples.size() < 4) throw DomainError("quasicircle test needs at least 4 boundary samples");
    if (trials == 0) throw DomainError("quasicircle test needs at least one trial");
    const auto quads = sample_ordered_quadruples(samples.size(), trials, seed);
    CrossRatioReport report;
    report.min_abs = std::numeric_limits<double>::infinity();
    for (const auto& q : quads) {
        const double v = std::abs(cross_ratio(samples[q[0]].point, samples[q[1]].point, samples[q[2]].point,
                                              samples[q[3]].point));
        if (v < report.min_abs) {
            report.min_abs = v;
            report.arg_quadruple = q;
            for (std::size_t i = 0; i < 4; ++i) report.arg_angles[i] = samples[q[i]].angle;
        }
    }
    report.quadruples_tested = quads.size();
    return report;
}

std::optional<double> inner_angle(const BoundaryCurve& curve, Complex query) {
    const auto s = curve.samples();
    if (s.empty()) return std::nullopt;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = std::abs(s[i].point - query);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    if (s.size() == 1) return best_d == 0.0 ? std::optional<double>(s[best].angle) : std::nullopt;
    const std::size_t prev = (best + s.size() - 1) % s.size();
    const std::size_t next = (best + 1) % s.size();
    const double spacing = std::max(std::abs(s[best].point - s[prev].point), std::abs(s[best].point - s[next].point));
    if (best_d <= 3.0 * spacing) return s[best].angle;
    return std::nullopt;
}

std::optional<double> inner_angle(const SpherePoint& c, const RotationNumber& theta, std::size_t N) {
    if (c.is_infinite()) return std::nullopt;
    const BoundaryCurve curve = boundary_orbit(c, theta, N);
    return inner_angle(curve, c.value());
}

std::string_view to_string(ScanStatus s) {
    switch (s) {
    case ScanStatus::ok: return "ok";
    case ScanStatus::infinite: return "infinite";
    case ScanStatus::degenerate: return "degenerate";
    case ScanStatus::escaped: return "escaped";
    case ScanStatus::collapsed: return "collapsed";
    }
    return "unknown";
}

std::vector<XiScanEntry> xi_scan(std::span<const SpherePoint> grid, const RotationNumber& theta, std::size_t N) {
    std::vector<XiScanEntry> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        XiScanEntry& e = out[i];
        e.c = grid[i];
        e.distance = std::numeric_limits<double>::infinity();
        if (grid[i].is_infinite()) {
            e.status = ScanStatus::infinite;
            e.message = "c = infinity has no finite distance";
            return;
        }
        try {
            const BoundaryCurve curve = boundary_orbit(grid[i], theta, N);
            const Complex cv = grid[i].value();
            double d = std::numeric_limits<double>::infinity();
            for (const auto& s : curve.samples()) d = std::min(d, std::abs(s.point - cv));
            e.distance = d;
            e.status = ScanStatus::ok;
        } catch (const DegenerateParameter& ex) {
            e.status = ScanStatus::degenerate;
            e.message = ex.what();
        } catch (const OrbitError& ex) {
            e.status = ex.kind() == OrbitError::Kind::collapsed ? ScanStatus::collapsed : ScanStatus::escaped;
            e.message = ex.what();
        } catch (const std::exception& ex) {
            e.status = ScanStatus::degenerate;
            e.message = ex.what();
        }
    });
    return out;
}

void write_boundary_csv(std::ostream& os, const BoundaryCurve& curve) {
    os << "angle,re,im\n";
    for (const auto& s : curve.samples()) {
        os << format_number(s.angle) << ',' << format_number(s.point.real()) << ',' << format_number(s.point.imag())
           << '\n';
    }
}

std::vector<SpherePoint> read_grid_csv(std::istream& is) {
    std::vector<SpherePoint> out;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::string body = line.substr(start);
        std::string lower = body;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (lower.rfind("inf", 0) == 0 && lower.find_first_not_of("inf, \t") == std::string::npos) {
            out.push_back(SpherePoint::infinity());
            first_content = false;
            continue;
        }
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream row(body);
        double re = 0.0, im = 0.0;
        std::string rest;
        if (!(row >> re >> im) || (row >> rest)) {
            if (first_content) {
                first_content = false;
                continue;
            }
            throw DomainError("malformed grid row " + std::to_string(line_no) + ": " + line);
        }
        first_content = false;
        out.emplace_back(Complex(re, im));
    }
    return out;
}

void write_xi_scan_csv(std::ostream& os, std::span<const XiScanEntry> entries) {
    os << "re,im,distance,status\n";
    for (const auto& e : entries) {
        if (e.c.is_infinite()) {
            os << "inf,inf,";
        } else {
            os << format_number(e.c.value().real()) << ',' << format_number(e.c.value().imag()) << ',';
        }
        os << format_number(e.distance) << ',' << to_string(e.status) << '\n';
    }
}

} // namespace siegel
