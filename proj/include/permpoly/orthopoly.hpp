#pragma once

#include <vector>

#include "permpoly/potential.hpp"
#include "permpoly/types.hpp"

namespace permpoly {

/// Monic orthogonal polynomial for the weight e^{-N x^2/2}, evaluated at a
/// complex point through pi_{k+1} = x pi_k - (k/N) pi_{k-1}.
cplx hermite_monic(int k, double n_param, cplx x);

/// (pi_k, pi_{k+1}) scaled by a common power of two so large orders stay in
/// range; value_k = pk * 2^exp2.
struct ScaledHermitePair {
    cplx pk;
    cplx pk1;
    int exp2;
};
ScaledHermitePair hermite_pair_scaled(int k, double n_param, cplx x);

/// Three-term recurrence pi_{k+1} = (x - b_k) pi_k - c_k pi_{k-1}.
/// c[0] stores the total mass of the measure.
struct RecurrenceCoeffs {
    std::vector<double> b;
    std::vector<double> c;
    int max_order() const { return static_cast<int>(b.size()) - 1; }
};

double eval_recurrence(const RecurrenceCoeffs& rc, int k, double x);
cplx eval_recurrence(const RecurrenceCoeffs& rc, int k, cplx x);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double total_mass() const;
};

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n_nodes, double a = -1.0, double b = 1.0);

/// Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
QuadratureRule gauss_laguerre(int n_nodes);

/// Gauss rule for the measure described by recurrence coefficients
/// (Golub-Welsch). Exact to degree 2 n_nodes - 1.
QuadratureRule gauss_rule(const RecurrenceCoeffs& rc, int n_nodes);

/// Interval half width beyond which e^{-N V} is negligible against the
/// requested polynomial degree.
double truncation_radius(const Potential& v, double n_param, int degree_budget);

/// Recurrence coefficients for dw = e^{-N V(x)} dx by the discretized
/// Stieltjes procedure on a fine Gauss-Legendre grid. k_max <= 20: moment
/// conditioning exhausts doubles beyond that. Throws on loss of positivity,
/// naming the failing index.
RecurrenceCoeffs monic_ops_from_potential(const Potential& v, double n_param, int k_max,
                                          int grid_nodes = 4000);

/// Gauss rule for dw = e^{-N V(x)} dx itself.
QuadratureRule potential_quadrature(const Potential& v, double n_param, int n_nodes);

} // namespace permpoly
