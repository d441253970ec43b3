#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegel/numbers.hpp"
#include "siegel/sphere.hpp"

namespace siegel {

struct BoundarySample {
    /// Internal angle {k theta} in turns, [0, 1).
    double angle = 0.0;
    Complex point;
    /// Orbit index k: point == g_c^k(1).
    std::size_t index = 0;
};

/// Finite sample of the closure of the critical orbit {g_c^k(1)}, sorted by
/// internal angle. The angle order is the circular order the conjugacy to
/// the rigid rotation induces on the curve.
class BoundaryCurve {
public:
    BoundaryCurve() = default;
    /// Sorts the samples by angle. Used directly for synthetic curves.
    BoundaryCurve(std::vector<BoundarySample> samples, SpherePoint c, double theta);

    std::span<const BoundarySample> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const SpherePoint& parameter() const { return c_; }
    double theta() const { return theta_; }

    /// Sample with orbit index k, or nullptr.
    const BoundarySample* by_index(std::size_t k) const;

private:
    std::vector<BoundarySample> samples_;
    std::vector<std::size_t> position_of_index_;
    SpherePoint c_ = SpherePoint::infinity();
    double theta_ = 0.0;
};

/// Orbits whose modulus exceeds this are reported as escaping.
inline constexpr double kEscapeRadius = 1e8;
/// Two orbit points closer than this mean the orbit is (numerically) finite.
inline constexpr double kCollisionDistance = 1e-12;

/// N points g_c^k(1), k = 0..N-1, labelled with angle {k theta}.
/// Throws DegenerateParameter for c near {0, 1, -1}, DomainError for N == 0,
/// and OrbitError naming the iterate when the orbit escapes or collapses.
BoundaryCurve boundary_orbit(const SpherePoint& c, const RotationNumber& theta, std::size_t N);

/// ((z1 - z3)(z2 - z4)) / ((z2 - z3)(z1 - z4)). Throws DomainError when two
/// points coincide.
Complex cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4);

/// The cross ratio of e^{2 pi i k theta}, ..., e^{2 pi i n theta}.
Complex rotation_cross_ratio(double theta, std::size_t k, std::size_t l, std::size_t m, std::size_t n);

/// Cross ratio of g_c^k(1), g_c^l(1), g_c^m(1), g_c^n(1) for k < l < m < n.
/// Within the degenerate radius of 1 or -1 the continuous extension
/// rotation_cross_ratio is returned. Throws OrbitError on a collision or an
/// infinite iterate.
Complex lambda_fn(const SpherePoint& c, const RotationNumber& theta, std::size_t k, std::size_t l, std::size_t m,
                  std::size_t n);

using Quadruple = std::array<std::size_t, 4>;

/// `trials` quadruples of distinct positions in [0, n_samples), each listed in
/// increasing position and then cyclically rotated by a random amount, so
/// every circularly ordered quadruple can occur. Deterministic in the seed.
std::vector<Quadruple> sample_ordered_quadruples(std::size_t n_samples, std::size_t trials, std::uint64_t seed);

struct CrossRatioReport {
    double min_abs = 0.0;
    /// Positions (in angle order) of the minimizing quadruple.
    Quadruple arg_quadruple{};
    std::array<double, 4> arg_angles{};
    std::size_t quadruples_tested = 0;
};

/// min |cross_ratio| over sampled circularly ordered quadruples.
/// Throws DomainError for curves with fewer than 4 samples.
CrossRatioReport quasicircle_delta(const BoundaryCurve& curve, std::size_t trials, std::uint64_t seed);

/// Internal angle of the sample nearest `query`, if the query lies within
/// three local sample spacings of it.
std::optional<double> inner_angle(const BoundaryCurve& curve, Complex query);

/// Inner angle of the free critical point c on the sampled boundary; none for
/// c = infinity or when c is off the curve.
std::optional<double> inner_angle(const SpherePoint& c, const RotationNumber& theta, std::size_t N);

enum class ScanStatus { ok, infinite, degenerate, escaped, collapsed };

std::string_view to_string(ScanStatus s);

struct XiScanEntry {
    SpherePoint c;
    /// Euclidean distance from c to the sampled curve; +inf unless status is ok.
    double distance = 0.0;
    ScanStatus status = ScanStatus::ok;
    std::string message;
};

/// d(c, gamma_c) for every grid point, computed in parallel. Failures are
/// recorded per entry; the scan always completes.
std::vector<XiScanEntry> xi_scan(std::span<const SpherePoint> grid, const RotationNumber& theta, std::size_t N);

/// CSV "angle,re,im", one row per sample in angle order.
void write_boundary_csv(std::ostream& os, const BoundaryCurve& curve);

/// Reads "re,im" rows (or "inf"); a non-numeric first line is a header, blank
/// lines and '#' comments are skipped. Throws DomainError on malformed rows.
std::vector<SpherePoint> read_grid_csv(std::istream& is);

/// CSV "re,im,distance,status".
void write_xi_scan_csv(std::ostream& os, std::span<const XiScanEntry> entries);

} // namespace siegel
