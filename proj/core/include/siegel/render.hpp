#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/quadratic_map.hpp"

namespace siegel {

struct RasterSpec {
    Complex center{0.0, 0.0};
    /// Width of the viewport in the plane; pixels are square.
    double width = 4.0;
    std::size_t px_width = 1;
    std::size_t px_height = 1;
    std::size_t max_iter = 200;
    /// Radius of the trap disk around 0; 0 selects the default of 0.4 times
    /// the smallest boundary-sample modulus.
    double trap_radius = 0.0;

    /// Throws DomainError for zero pixel sizes, a non-positive or non-finite
    /// width, or a negative trap radius.
    void validate() const;
    /// Plane coordinate of the center of pixel (x, y); row 0 is the top.
    Complex pixel_center(std::size_t x, std::size_t y) const;
};

inline constexpr std::int32_t kUnresolved = -1;
inline constexpr std::int32_t kEscaped = -2;
/// Escape radius used only for the polynomial c = infinity.
inline constexpr double kPolynomialEscapeRadius = 4.0;
/// An orbit that moves less than this (relative) in one step sits on a fixed
/// point outside the trap and is reported unresolved.
inline constexpr double kStationaryTolerance = 1e-12;
/// Boundary samples used to size the trap disk.
inline constexpr std::size_t kTrapSamples = 4096;

struct LabelGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    /// Row-major from the top-left: hit iterate k >= 0, kUnresolved or kEscaped.
    std::vector<std::int32_t> labels;
    double trap_radius = 0.0;

    std::int32_t at(std::size_t x, std::size_t y) const { return labels[y * width + x]; }
    double unresolved_fraction() const;
};

/// Smallest modulus over the first `samples` points of the critical orbit.
double boundary_min_modulus(const QuadraticSiegelMap& g, std::size_t samples = kTrapSamples);

/// First k <= max_iter with |g^k(z)| < trap_radius, kEscaped when the
/// polynomial orbit leaves the escape disk, kUnresolved otherwise (including
/// orbits that become stationary outside the trap).
std::int32_t classify_point(const QuadraticSiegelMap& g, Complex z, std::size_t max_iter, double trap_radius);

/// Labels every pixel, rows in parallel. Throws DomainError for an invalid
/// spec or a trap radius above half the smallest boundary-sample modulus.
LabelGrid classify_grid(const QuadraticSiegelMap& g, const RasterSpec& spec);

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
    Rgb unresolved{0, 0, 0};
    Rgb escaped{255, 255, 255};
    /// Colour of a hit at iterate k is hits[k % hits.size()]; must be nonempty.
    std::vector<Rgb> hits;

    static Palette standard();
    Rgb color(std::int32_t label) const;
};

/// Binary PPM: "P6\n{w} {h}\n255\n" then w*h RGB triples. Throws DomainError
/// for an empty grid.
std::string encode_ppm(const LabelGrid& grid, const Palette& palette = Palette::standard());

/// Writes encode_ppm(grid, palette) to path; throws DomainError on I/O failure.
void write_image(const LabelGrid& grid, const std::string& path, const Palette& palette = Palette::standard());

} // namespace siegel
