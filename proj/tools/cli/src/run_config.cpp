#include "siegel/cli/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

namespace siegel::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("invalid " + what + ": '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw UsageError("invalid " + what + ": '" + text + "'");
    return v;
}

} // namespace

std::string to_json(const RunConfig& c) {
    nlohmann::json j;
    j["theta"] = c.theta;
    j["c"] = c.c;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["trials"] = c.trials;
    j["iterations"] = c.iterations;
    j["n_max"] = c.n_max;
    j["circle_samples"] = c.circle_samples;
    j["center"] = c.center;
    j["width"] = c.width;
    j["pixels"] = c.pixels;
    j["max_iter"] = c.max_iter;
    j["trap_radius"] = c.trap_radius;
    j["grid_file"] = c.grid_file;
    j["spec_file"] = c.spec_file;
    j["signature"] = c.signature;
    j["out"] = c.out;
    j["json"] = c.json;
    return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw UsageError(std::string("invalid config JSON: ") + ex.what());
    }
    if (!j.is_object()) throw UsageError("config JSON must be an object");
    RunConfig c;
    auto read = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(field);
        } catch (const nlohmann::json::exception&) {
            throw UsageError(std::string("config key '") + key + "' has the wrong type");
        }
    };
    for (const auto& [key, value] : j.items()) {
        static const char* known[] = {"theta",  "c",         "tol",       "seed",      "samples",   "trials",
                                      "iterations", "n_max", "circle_samples", "center", "width",     "pixels",
                                      "max_iter", "trap_radius", "grid_file", "spec_file", "signature", "out", "json"};
        if (std::none_of(std::begin(known), std::end(known), [&](const char* k) { return key == k; })) {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    read("theta", c.theta);
    read("c", c.c);
    read("tol", c.tol);
    read("seed", c.seed);
    read("samples", c.samples);
    read("trials", c.trials);
    read("iterations", c.iterations);
    read("n_max", c.n_max);
    read("circle_samples", c.circle_samples);
    read("center", c.center);
    read("width", c.width);
    read("pixels", c.pixels);
    read("max_iter", c.max_iter);
    read("trap_radius", c.trap_radius);
    read("grid_file", c.grid_file);
    read("spec_file", c.spec_file);
    read("signature", c.signature);
    read("out", c.out);
    read("json", c.json);
    return c;
}

RotationNumber parse_theta(const std::string& text) {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t == "golden") return RotationNumber::golden_mean();
    const double value = parse_double(text, "theta");
    if (!(value > 0.0 && value < 1.0)) throw UsageError("theta must be 'golden' or a decimal in (0,1): '" + text + "'");
    return RotationNumber::from_value(value);
}

Complex parse_complex(const std::string& text) {
    const std::string t = trim(text);
    const auto comma = t.find(',');
    if (comma == std::string::npos) return {parse_double(t, "complex number"), 0.0};
    return {parse_double(t.substr(0, comma), "real part"), parse_double(t.substr(comma + 1), "imaginary part")};
}

SpherePoint parse_parameter(const std::string& text) {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t == "inf" || t == "infinity") return SpherePoint::infinity();
    return SpherePoint(parse_complex(text));
}

std::pair<std::size_t, std::size_t> parse_pixels(const std::string& text) {
    const std::string t = trim(text);
    const auto x = t.find_first_of("xX");
    if (x == std::string::npos) throw UsageError("pixel size must look like WxH: '" + text + "'");
    auto count = [&](const std::string& s) -> std::size_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
            throw UsageError("pixel size must look like WxH: '" + text + "'");
        }
        const auto n = static_cast<std::size_t>(std::stoull(s));
        if (n == 0) throw UsageError("pixel size must be positive: '" + text + "'");
        return n;
    };
    return {count(t.substr(0, x)), count(t.substr(x + 1))};
}

} // namespace siegel::cli
