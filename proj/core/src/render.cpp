#include "siegel/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "siegel/boundary.hpp"
#include "siegel/errors.hpp"
#include "siegel/format.hpp"
#include "siegel/parallel.hpp"

namespace siegel {

void RasterSpec::validate() const {
    if (px_width == 0 || px_height == 0) throw DomainError("raster needs at least one pixel in each direction");
    if (!std::isfinite(width) || width <= 0.0) throw DomainError("viewport width must be positive");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) throw DomainError("viewport center must be finite");
    if (!std::isfinite(trap_radius) || trap_radius < 0.0) throw DomainError("trap radius must be positive");
}

Complex RasterSpec::pixel_center(std::size_t x, std::size_t y) const {
    const double step = width / static_cast<double>(px_width);
    const double dx = (static_cast<double>(x) + 0.5 - 0.5 * static_cast<double>(px_width)) * step;
    const double dy = (0.5 * static_cast<double>(px_height) - static_cast<double>(y) - 0.5) * step;
    return center + Complex(dx, dy);
}

double LabelGrid::unresolved_fraction() const {
    if (labels.empty()) return 0.0;
    const auto n = std::count(labels.begin(), labels.end(), kUnresolved);
    return static_cast<double>(n) / static_cast<double>(labels.size());
}

double boundary_min_modulus(const QuadraticSiegelMap& g, std::size_t samples) {
    const BoundaryCurve curve = boundary_orbit(g.critical_parameter(), g.theta(), samples);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : curve.samples()) m = std::min(m, std::abs(s.point));
    return m;
}

std::int32_t classify_point(const QuadraticSiegelMap& g, Complex z, std::size_t max_iter, double trap_radius) {
    const bool polynomial = g.is_polynomial();
    SpherePoint w(z);
    for (std::size_t k = 0; k <= max_iter; ++k) {
        if (w.is_infinite()) return polynomial ? kEscaped : kUnresolved;
        const Complex v = w.value();
        if (std::abs(v) < trap_radius) return static_cast<std::int32_t>(k);
        if (polynomial && std::abs(v) > kPolynomialEscapeRadius) return kEscaped;
        if (k == max_iter) break;
        const SpherePoint next = g(w);
        if (next.is_finite() && std::abs(next.value() - v) <= kStationaryTolerance * std::max(1.0, std::abs(v))) {
            return kUnresolved;
        }
        w = next;
    }
    return kUnresolved;
}

LabelGrid classify_grid(const QuadraticSiegelMap& g, const RasterSpec& spec) {
    spec.validate();
    if (spec.max_iter > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw DomainError("max_iter too large");
    }
    const double min_modulus = boundary_min_modulus(g);
    const double limit = 0.5 * min_modulus;
    double trap = spec.trap_radius;
    if (trap == 0.0) trap = 0.4 * min_modulus;
    if (trap > limit) {
        throw DomainError("trap radius " + format_number(trap) + " exceeds half the smallest boundary modulus " +
                          format_number(limit));
    }
    LabelGrid grid;
    grid.width = spec.px_width;
    grid.height = spec.px_height;
    grid.trap_radius = trap;
    grid.labels.assign(spec.px_width * spec.px_height, kUnresolved);
    parallel_for(spec.px_height, [&](std::size_t y) {
        for (std::size_t x = 0; x < spec.px_width; ++x) {
            grid.labels[y * spec.px_width + x] = classify_point(g, spec.pixel_center(x, y), spec.max_iter, trap);
        }
    });
    return grid;
}

Palette Palette::standard() {
    Palette p;
    constexpr std::size_t kBands = 16;
    p.hits.reserve(kBands);
    for (std::size_t k = 0; k < kBands; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(kBands);
        auto channel = [t](double phase) {
            const double v = 0.5 + 0.5 * std::cos(2.0 * 3.14159265358979323846 * (t + phase));
            return static_cast<std::uint8_t>(std::lround(40.0 + 200.0 * v));
        };
        p.hits.push_back({channel(0.0), channel(1.0 / 3.0), channel(2.0 / 3.0)});
    }
    return p;
}

Rgb Palette::color(std::int32_t label) const {
    if (label == kUnresolved) return unresolved;
    if (label == kEscaped) return escaped;
    if (label < 0) throw DomainError("unknown pixel label " + std::to_string(label));
    if (hits.empty()) throw DomainError("palette has no hit colours");
    return hits[static_cast<std::size_t>(label) % hits.size()];
}

std::string encode_ppm(const LabelGrid& grid, const Palette& palette) {
    if (grid.width == 0 || grid.height == 0) throw DomainError("image needs at least one pixel in each direction");
    if (grid.labels.size() != grid.width * grid.height) throw DomainError("label grid size does not match its shape");
    std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
    out.reserve(out.size() + 3 * grid.labels.size());
    for (std::int32_t label : grid.labels) {
        const Rgb c = palette.color(label);
        out.push_back(static_cast<char>(c.r));
        out.push_back(static_cast<char>(c.g));
        out.push_back(static_cast<char>(c.b));
    }
    return out;
}

void write_image(const LabelGrid& grid, const std::string& path, const Palette& palette) {
    const std::string bytes = encode_ppm(grid, palette);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open " + path + " for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw DomainError("failed writing " + path);
}

} // namespace siegel
