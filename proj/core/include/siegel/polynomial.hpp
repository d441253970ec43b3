#pragma once

#include <span>
#include <vector>

#include "siegel/sphere.hpp"

namespace siegel {

/// Coefficients are lowest degree first: c[0] + c[1] z + ... + c[n] z^n.
Complex horner(std::span<const Complex> coeffs, Complex z);

/// k-th derivative coefficients.
std::vector<Complex> differentiate(std::span<const Complex> coeffs, unsigned k = 1);

/// All complex roots (with multiplicity) by Aberth-Ehrlich iteration.
///
/// Leading coefficients below 1e-14 of the largest one are dropped, so the
/// degree may be lower than coeffs.size() - 1. Root clusters tighter than
/// 1e-5 are treated as one multiple root: the cluster mean is refined by
/// Newton's method on the (m-1)-th derivative, which restores full accuracy
/// to double roots. Throws ConvergenceError if the iteration stalls.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

} // namespace siegel
