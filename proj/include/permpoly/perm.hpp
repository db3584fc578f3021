#pragma once

#include <cstdint>

#include "permpoly/mc_estimate.hpp"
#include "permpoly/poly.hpp"
#include "permpoly/types.hpp"

namespace permpoly {

// Exact permanent kernels. All four compute the same quantity; they differ
// in cost and serve as independent cross-checks of each other.

/// Definition sum over all n! permutations. n <= 10.
cplx per_naive(const CMatrix& a);

/// Ryser inclusion-exclusion with Gray-code subset updates, O(2^n n). n <= 32.
cplx per_ryser(const CMatrix& a);

/// Glynn +-1 averaging with Gray-code updates, O(2^n n). n <= 32.
cplx per_glynn(const CMatrix& a);

/// Trapezoid discretization of the n-fold contour representation (the
/// conjugate variables integrated out analytically). Exact to rounding for
/// points_per_circle >= n + 2; 0 selects that default. n <= 8.
cplx per_contour(const CMatrix& a, int points_per_circle = 0);

/// Full 2n-fold contour form with an exp integrand; trapezoid error decays
/// factorially in points_per_circle. Supported for n <= 2 only.
cplx per_contour_full(const CMatrix& a, int points_per_circle);

/// Permanental polynomial p(mu) = Per(mu*I - A), monic of degree n.
/// Coefficients are principal-submatrix permanent sums, evaluated jointly in
/// a single Ryser-style subset sweep, O(2^n n^2). n <= 24.
Poly perm_poly(const CMatrix& a);

/// Gaussian-integral estimator of Per(F) for Hermitian positive-definite F:
/// with F = E E* and v a standard complex Gaussian vector, the product of
/// |(Ev)_i|^2 over i is an unbiased sample of Per(F).
MCEstimate per_gaussian_estimate(const CMatrix& f, std::size_t samples,
                                 std::uint64_t seed, int workers = 1);

} // namespace permpoly
