#pragma once

#include <span>

#include "permpoly/ensembles.hpp"
#include "permpoly/poly.hpp"
#include "permpoly/potential.hpp"
#include "permpoly/types.hpp"

namespace permpoly {

// ---------------------------------------------------------------------------
// Mean permanental polynomials

/// Mean permanental polynomial for the unitary-invariant ensemble with
/// potential V: the (mu - lambda)^{2N-1} pi_{N-1} projection integral,
/// evaluated coefficientwise by Gauss quadrature for dw = e^{-NV} dx.
/// Normalized monic of degree n.
Poly mean_perm_poly_general(const Potential& v, int n);

/// The degree-N projection coefficient a_N for the Gaussian potential,
/// straight from the quadrature route (its closed form is
/// (2N-1)!/((N-1)! N^N) sqrt(2 pi / N)).
double gaussian_projection_norm(int n);

/// GUE mean: i^n pi_n(-i mu) with N-parameter n.
cplx mean_perm_poly_gue(int n, cplx mu);
Poly mean_perm_poly_gue_coeffs(int n);

/// GOE mean: (i^n / 2^{n/2}) pi_n(-i sqrt(2) mu) with N-parameter n.
cplx mean_perm_poly_goe(int n, cplx mu);
Poly mean_perm_poly_goe_coeffs(int n);

// ---------------------------------------------------------------------------
// Two-point correlators

/// Christoffel-Darboux-style two-point kernel of characteristic polynomials,
/// [pi_{N+1}(x) pi_N(y) - pi_{N+1}(y) pi_N(x)] / (x - y). The row order is
/// fixed so that N = 1 reproduces the direct expectation mu1 mu2 + 1 (the
/// printed determinant has the opposite sign). Coincident arguments take the
/// derivative limit when `confluent_limit` is set, and are rejected
/// otherwise.
cplx char_two_point_gue(int n, cplx x, cplx y, bool confluent_limit = false);

/// GUE permanental two-point function: char_two_point_gue at (-i mu1, i mu2).
cplx two_point_gue(int n, cplx mu1, cplx mu2);

/// Ratio of the characteristic two-point kernel to its coincident value at
/// mu1 = mu, mu2 = mu + delta/(pi n rho(mu)); tends to sin(delta)/delta in
/// the bulk. The displacement carries the mean-spacing factor pi that the
/// asymptotic kernel argument requires.
double dyson_kernel_ratio(int n, double mu, double delta);

/// CUE two-point: N!(N-1)! sum_j (a conj(b))^j / (j! (2N-1-j)!).
cplx two_point_cue_sum(int n, cplx a, cplx b);
/// Same quantity as (N-1) int_0^1 (1-t)^{N-2} (a conj(b) + t)^N dt; N >= 2.
cplx two_point_cue_integral(int n, cplx a, cplx b);

/// Ginibre two-point: (N!/N^N) sum_k (N a conj(b))^k / k!.
cplx two_point_ginibre_sum(int n, cplx a, cplx b);
/// Same as N int_0^inf e^{-NR} (a conj(b) + R)^N dR, by Gauss-Laguerre.
cplx two_point_ginibre_integral(int n, cplx a, cplx b);

/// GOE two-point by exact Gaussian moments of the multinomial expansion of
/// [(mu1 + q11)(mu2 - q22) + |q12|^2 + |q3|^2]^n. n <= 20.
cplx two_point_goe(int n, cplx mu1, cplx mu2);

// ---------------------------------------------------------------------------
// Group integrals and symmetric functions

/// Haar average of exp(t [U L U*]_gamma) for rank-one coupling: closed pole
/// sum for well-separated spectra, complete-symmetric series near
/// degeneracies and small t.
cplx hciz_rank_one(std::span<const double> lambda, cplx t);

/// Full HCIZ determinant formula; spectra must be simple.
cplx hciz_full(std::span<const double> lambda, std::span<const double> gamma, cplx beta);

/// Rank-one unitary group integral (N-1) int_0^1 (1-t)^{N-2} I0(2 sqrt(t v2)) dt.
cplx fk_rank_one_series(cplx v2, int n);
cplx fk_rank_one_quadrature(cplx v2, int n);

/// Complete symmetric function h_n by dynamic programming.
cplx complete_symmetric(int n, std::span<const cplx> x);

/// (-1)^{N-1} sum_i x_i^{n+N-1} / prod_{j != i} (x_j - x_i); vanishes for
/// n in {-(N-1),...,-1} and equals h_n for n >= 0.
cplx symfun1_lhs(int n, std::span<const cplx> x);

// ---------------------------------------------------------------------------
// Asymptotic profiles

enum class PhiProfile { GuePermanental, CuePermanental, CueCharacteristic, GinibrePermanental };

/// Limiting (1/N) ln <|p|^2> surfaces. On branch seams the value is the
/// limit from outside the support (principal branch).
double asymptotic_phi(PhiProfile profile, cplx z);

/// Conjectured limiting root densities: 1-D in y on the imaginary segment
/// for GUE/GOE (semicircles of radius 2 and 2 sqrt(2)).
double marginal_density_oracle(EnsembleKind kind, double y);
/// 2-D profiles on the unit disk for CUE ((2/pi)(1+|z|^2)^{-2}) and Ginibre (1/pi).
double planar_density_oracle(EnsembleKind kind, cplx z);

} // namespace permpoly
