#include "siegel/thurston.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "siegel/errors.hpp"

namespace siegel {
namespace {

/// Strongly connected components of the directed graph i -> j when a(i, j) > 0.
std::vector<std::vector<std::size_t>> strong_components(const ThurstonMatrix& a) {
    const std::size_t n = a.size();
    constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (a(v, w) <= 0.0) continue;
            if (index[w] == kUnvisited) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] == kUnvisited) visit(v);
    }
    return out;
}

struct BlockRoot {
    double rho = 0.0;
    std::size_t iterations = 0;
};

BlockRoot block_perron_root(const ThurstonMatrix& a, const std::vector<std::size_t>& comp, double tol,
                            std::size_t max_iter) {
    const std::size_t m = comp.size();
    if (m == 1) return {a(comp[0], comp[0]), 0};
    std::vector<double> x(m, 1.0), y(m, 0.0);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        double norm = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            double s = x[r];
            for (std::size_t k = 0; k < m; ++k) s += a(comp[r], comp[k]) * x[k];
            y[r] = s;
            const double ratio = s / x[r];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            norm = std::max(norm, s);
        }
        for (std::size_t r = 0; r < m; ++r) x[r] = y[r] / norm;
        if (hi - lo <= tol * std::max(1.0, hi)) return {0.5 * (lo + hi) - 1.0, it};
    }
    throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iter) + " steps");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("orbifold signature overflows exact arithmetic");
    return r;
}

Fraction reduce(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return {num, den};
}

} // namespace

void MulticurveSpec::validate() const {
    if (n == 0) throw DomainError("multicurve must contain at least one curve");
    for (const auto& e : preimages) {
        if (e.target < 1 || e.target > n || e.homotopy_class < 1 || e.homotopy_class > n) {
            throw DomainError("preimage entry [" + std::to_string(e.target) + ", " + std::to_string(e.homotopy_class) +
                              ", " + std::to_string(e.degree) + "] has an index outside [1, " + std::to_string(n) +
                              "]");
        }
        if (e.degree < 1) throw DomainError("preimage degree must be a positive integer");
    }
}

MulticurveSpec parse_multicurve_spec(std::string_view json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw DomainError(std::string("invalid multicurve JSON: ") + ex.what());
    }
    MulticurveSpec spec;
    auto as_index = [](const json& v, const char* what) -> std::int64_t {
        if (!v.is_number_integer()) throw DomainError(std::string("multicurve field ") + what + " must be an integer");
        return v.get<std::int64_t>();
    };
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("preimages") || !doc["preimages"].is_array()) {
        throw DomainError("multicurve JSON needs an integer \"n\" and an array \"preimages\"");
    }
    const std::int64_t n = as_index(doc["n"], "n");
    if (n < 1) throw DomainError("multicurve must contain at least one curve");
    spec.n = static_cast<std::size_t>(n);
    for (const auto& row : doc["preimages"]) {
        if (!row.is_array() || row.size() != 3) throw DomainError("each preimage entry must be [j, i, d]");
        const std::int64_t j = as_index(row[0], "j");
        const std::int64_t i = as_index(row[1], "i");
        const std::int64_t d = as_index(row[2], "d");
        if (j < 1 || i < 1) throw DomainError("preimage indices are 1-based");
        spec.preimages.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i), d});
    }
    spec.validate();
    return spec;
}

std::string to_json(const MulticurveSpec& spec) {
    nlohmann::json doc;
    doc["n"] = spec.n;
    doc["preimages"] = nlohmann::json::array();
    for (const auto& e : spec.preimages) doc["preimages"].push_back({e.target, e.homotopy_class, e.degree});
    return doc.dump();
}

ThurstonMatrix::ThurstonMatrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw DomainError("matrix data does not have n*n entries");
    for (double v : a_) {
        if (!std::isfinite(v) || v < 0.0) throw DomainError("matrix entries must be finite and nonnegative");
    }
}

ThurstonMatrix thurston_matrix(const MulticurveSpec& spec) {
    spec.validate();
    ThurstonMatrix a(spec.n);
    for (const auto& e : spec.preimages) a(e.homotopy_class - 1, e.target - 1) += 1.0 / static_cast<double>(e.degree);
    return a;
}

MulticurveSpec duplicate_block(const MulticurveSpec& spec) {
    spec.validate();
    MulticurveSpec out;
    out.n = 2 * spec.n;
    out.preimages = spec.preimages;
    for (const auto& e : spec.preimages) out.preimages.push_back({e.target + spec.n, e.homotopy_class + spec.n, e.degree});
    return out;
}

EigenvalueResult leading_eigenvalue(const ThurstonMatrix& a, double tol, std::size_t max_iter) {
    if (a.size() == 0) throw DomainError("leading eigenvalue of an empty matrix");
    EigenvalueResult result;
    for (const auto& comp : strong_components(a)) {
        const BlockRoot b = block_perron_root(a, comp, tol, max_iter);
        result.value = std::max(result.value, b.rho);
        result.iterations = std::max(result.iterations, b.iterations);
    }
    result.obstructed = result.value >= 1.0 - kObstructionTolerance;
    return result;
}

OrbifoldEuler orbifold_euler(const std::vector<Ramification>& signature) {
    if (signature.empty()) throw DomainError("orbifold signature must be nonempty");
    Fraction chi{2, 1};
    for (const auto& nu : signature) {
        if (!nu) {
            chi = reduce(chi.num - chi.den, chi.den);
            continue;
        }
        if (*nu < 2) throw DomainError("ramification values must be at least 2");
        const std::int64_t den = checked_mul(chi.den, *nu);
        const std::int64_t num = checked_mul(chi.num, *nu) - checked_mul(chi.den, *nu - 1);
        chi = reduce(num, den);
    }
    return {chi, chi.num < 0};
}

std::vector<Ramification> parse_signature(std::string_view text) {
    std::vector<Ramification> out;
    std::string s(text);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        std::string lower = tok;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (lower == "inf" || lower == "infinity" || lower == "\xe2\x88\x9e") {
            out.emplace_back(std::nullopt);
            continue;
        }
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw DomainError("invalid ramification value: " + tok);
        }
        if (used != tok.size()) throw DomainError("invalid ramification value: " + tok);
        out.emplace_back(v);
    }
    if (out.empty()) throw DomainError("orbifold signature must be nonempty");
    return out;
}

} // namespace siegel
