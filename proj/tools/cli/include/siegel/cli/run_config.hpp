#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <siegel/numbers.hpp>
#include <siegel/sphere.hpp>

namespace siegel::cli {

/// Malformed command-line input; mapped to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every setting a subcommand can read. Flags override values loaded with
/// --config.
struct RunConfig {
    std::string theta = "golden";
    std::string c = "inf";
    double tol = 1e-4;
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    std::size_t trials = 10000;
    std::int64_t iterations = 1'000'000;
    std::size_t n_max = 5;
    std::size_t circle_samples = 50;
    std::string center = "0,0";
    double width = 4.0;
    std::string pixels = "200x200";
    std::size_t max_iter = 200;
    double trap_radius = 0.0;
    std::string grid_file;
    std::string spec_file;
    std::string signature;
    std::string out;
    bool json = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys or wrong types are usage errors.
RunConfig config_from_json(const std::string& text);

/// "golden" or a decimal in (0, 1).
RotationNumber parse_theta(const std::string& text);
/// "inf" / "infinity", "re,im" or "re".
SpherePoint parse_parameter(const std::string& text);
/// "re,im" or "re".
Complex parse_complex(const std::string& text);
/// "WxH".
std::pair<std::size_t, std::size_t> parse_pixels(const std::string& text);

} // namespace siegel::cli
