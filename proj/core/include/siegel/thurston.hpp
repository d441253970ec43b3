#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace siegel {

/// One non-peripheral component of f^{-1}(gamma_j): it is homotopic to
/// gamma_i and maps onto gamma_j with the given degree. Indices are 1-based.
struct PreimageEntry {
    std::size_t target = 1;
    std::size_t homotopy_class = 1;
    std::int64_t degree = 1;

    friend bool operator==(const PreimageEntry&, const PreimageEntry&) = default;
};

struct MulticurveSpec {
    std::size_t n = 0;
    std::vector<PreimageEntry> preimages;

    /// Throws DomainError for n == 0, indices outside [1, n] or degrees < 1.
    void validate() const;

    friend bool operator==(const MulticurveSpec&, const MulticurveSpec&) = default;
};

/// Parses {"n": int, "preimages": [[j, i, d], ...]}. Throws DomainError on
/// malformed input or an invalid spec.
MulticurveSpec parse_multicurve_spec(std::string_view json_text);

std::string to_json(const MulticurveSpec& spec);

/// Dense n x n nonnegative matrix, row-major, 0-based access.
class ThurstonMatrix {
public:
    ThurstonMatrix() = default;
    explicit ThurstonMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    /// Throws DomainError unless the data is n*n finite nonnegative entries.
    ThurstonMatrix(std::size_t n, std::vector<double> row_major);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// a_ij = sum over preimage components of gamma_j homotopic to gamma_i of 1/d.
ThurstonMatrix thurston_matrix(const MulticurveSpec& spec);

/// Two disjoint copies of the multicurve, curves n+1..2n mirroring 1..n, whose
/// matrix is diag(B, B).
MulticurveSpec duplicate_block(const MulticurveSpec& spec);

inline constexpr double kObstructionTolerance = 1e-12;

struct EigenvalueResult {
    double value = 0.0;
    /// value >= 1 (up to kObstructionTolerance).
    bool obstructed = false;
    std::size_t iterations = 0;
};

/// Perron root of a nonnegative matrix. The matrix is split into strongly
/// connected blocks; on each block power iteration runs on B + I from the
/// all-ones vector until the Collatz-Wielandt bounds agree to `tol`
/// (relative). Throws DomainError for an empty matrix and ConvergenceError
/// when a block does not converge within max_iter steps.
EigenvalueResult leading_eigenvalue(const ThurstonMatrix& a, double tol = 1e-13, std::size_t max_iter = 200000);

/// A cone point order; nullopt stands for infinity (a puncture).
using Ramification = std::optional<std::int64_t>;

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct OrbifoldEuler {
    Fraction chi;
    bool hyperbolic = false;
};

/// chi = 2 - sum (1 - 1/nu) with 1/infinity = 0, computed exactly; hyperbolic
/// iff chi < 0. Throws DomainError for an empty signature or nu < 2.
OrbifoldEuler orbifold_euler(const std::vector<Ramification>& signature);

/// Parses a comma-separated signature such as "2,2,2,3" or "inf,inf".
std::vector<Ramification> parse_signature(std::string_view text);

} // namespace siegel
