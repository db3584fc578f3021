#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "permpoly/ensembles.hpp"
#include "permpoly/mc_estimate.hpp"
#include "permpoly/poly.hpp"
#include "permpoly/types.hpp"

namespace permpoly {

/// Core estimator: averages sample_fn(index) over index = 0..samples-1.
/// Per-index RNG substreams plus a fixed pairwise reduction make the result
/// bit-identical for any worker count.
MCEstimate mc_expectation(std::size_t samples, std::uint64_t seed, int workers,
                          const std::function<cplx(std::size_t, std::mt19937_64&)>& sample_fn);

/// Coefficientwise Monte-Carlo mean of the permanental polynomial.
std::vector<MCEstimate> mc_mean_perm_poly(const EnsembleSpec& spec, std::size_t samples,
                                          std::uint64_t seed, int workers = 1);

/// Mean of p(mu1) p(mu2) over the ensemble; CUE/Ginibre correlations are
/// only non-degenerate when the second factor is conjugated, so those kinds
/// require conjugate_second.
MCEstimate mc_two_point(const EnsembleSpec& spec, cplx mu1, cplx mu2, bool conjugate_second,
                        std::size_t samples, std::uint64_t seed, int workers = 1);

/// Same with characteristic polynomials d(mu) = det(mu I - H).
MCEstimate mc_char_two_point(const EnsembleSpec& spec, cplx mu1, cplx mu2,
                             std::size_t samples, std::uint64_t seed, int workers = 1);

struct DualityReport {
    MCEstimate lhs; // [Per(mu I_N - H)]^n over N x N entries of variance 1/N
    MCEstimate rhs; // [Per(mu I_n - q)]^N over n x n entries of variance 1/N
    double z;
};

/// Size-order exchange identity for Gaussian permanental moments. Both sides
/// share the weight e^{-(N/2) Tr .^2}, so the small matrix is sampled at
/// entry variance 1/N rather than 1/n.
DualityReport duality_check(int n, int big_n, double mu, std::size_t samples,
                            std::uint64_t seed, int workers = 1);

/// Right-hand side of the two-point Hermitian-q representation
/// int e^{-(N/2) Tr q^2} [Per(diag(mu1, mu2) - q)]^N dq, evaluated by exact
/// Gaussian moments of the multinomial expansion (N <= 20).
cplx maingau_rhs_moment(cplx mu1, cplx mu2, int big_n);

/// Monte-Carlo version of the same integral, sampling the 2x2 Hermitian q.
MCEstimate maingau_rhs_mc(cplx mu1, cplx mu2, int big_n, std::size_t samples,
                          std::uint64_t seed, int workers = 1);

} // namespace permpoly
