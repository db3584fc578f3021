#include "permpoly/orthopoly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace permpoly {

cplx hermite_monic(int k, double n_param, cplx x) {
    if (k < 0) throw std::invalid_argument("hermite_monic: negative order");
    if (n_param < 1.0) throw std::invalid_argument("hermite_monic: N parameter must be >= 1");
    if (k == 0) return cplx(1.0);
    cplx prev(1.0), cur = x;
    for (int j = 1; j < k; ++j) {
        const cplx nxt = x * cur - (double(j) / n_param) * prev;
        prev = cur;
        cur = nxt;
    }
    return cur;
}

ScaledHermitePair hermite_pair_scaled(int k, double n_param, cplx x) {
    if (k < 0) throw std::invalid_argument("hermite_pair_scaled: negative order");
    if (k == 0) return {cplx(1.0), x, 0};
    cplx prev(1.0), cur = x;
    int exp2 = 0;
    for (int j = 1; j <= k; ++j) {
        cplx nxt = x * cur - (double(j) / n_param) * prev;
        prev = cur;
        cur = nxt;
        const double mag = std::max(std::abs(cur.real()) + std::abs(cur.imag()),
                                    std::abs(prev.real()) + std::abs(prev.imag()));
        if (mag > 0x1p+500) {
            prev *= 0x1p-500;
            cur *= 0x1p-500;
            exp2 += 500;
        } else if (mag > 0.0 && mag < 0x1p-500) {
            prev *= 0x1p+500;
            cur *= 0x1p+500;
            exp2 -= 500;
        }
    }
    return {prev, cur, exp2};
}

double eval_recurrence(const RecurrenceCoeffs& rc, int k, double x) {
    if (k > rc.max_order() + 1)
        throw std::invalid_argument("eval_recurrence: order beyond available coefficients");
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x - rc.b[0];
    for (int j = 1; j < k; ++j) {
        const double nxt = (x - rc.b[j]) * cur - rc.c[j] * prev;
        prev = cur;
        cur = nxt;
    }
    return cur;
}

cplx eval_recurrence(const RecurrenceCoeffs& rc, int k, cplx x) {
    if (k > rc.max_order() + 1)
        throw std::invalid_argument("eval_recurrence: order beyond available coefficients");
    if (k == 0) return cplx(1.0);
    cplx prev(1.0), cur = x - rc.b[0];
    for (int j = 1; j < k; ++j) {
        const cplx nxt = (x - rc.b[j]) * cur - rc.c[j] * prev;
        prev = cur;
        cur = nxt;
    }
    return cur;
}

double QuadratureRule::total_mass() const {
    double acc = 0.0;
    for (double w : weights) acc += w;
    return acc;
}

QuadratureRule gauss_legendre(int n_nodes, double a, double b) {
    if (n_nodes < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    QuadratureRule rule;
    rule.nodes.resize(n_nodes);
    rule.weights.resize(n_nodes);
    const int m = (n_nodes + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev estimate, then Newton on the Legendre recurrence.
        double x = std::cos(kPi * (i + 0.75) / (n_nodes + 0.5));
        double dp = 0.0;
        double p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            p1 = x;
            for (int j = 2; j <= n_nodes; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n_nodes * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n_nodes - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n_nodes - 1 - i] = w;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n_nodes; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

QuadratureRule gauss_rule(const RecurrenceCoeffs& rc, int n_nodes) {
    if (n_nodes < 1) throw std::invalid_argument("gauss_rule: need at least one node");
    if (n_nodes > rc.max_order() + 1)
        throw std::invalid_argument("gauss_rule: " + std::to_string(n_nodes) +
                                    " nodes exceed the available recurrence order " +
                                    std::to_string(rc.max_order()));
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        jac(i, i) = rc.b[i];
        if (i + 1 < n_nodes) {
            const double off = std::sqrt(rc.c[i + 1]);
            jac(i, i + 1) = off;
            jac(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    QuadratureRule rule;
    rule.nodes.resize(n_nodes);
    rule.weights.resize(n_nodes);
    const double mass = rc.c[0];
    for (int i = 0; i < n_nodes; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mass * v0 * v0;
    }
    return rule;
}

QuadratureRule gauss_laguerre(int n_nodes) {
    RecurrenceCoeffs rc;
    rc.b.resize(n_nodes + 1);
    rc.c.resize(n_nodes + 1);
    rc.c[0] = 1.0; // integral of e^{-x}
    for (int k = 0; k <= n_nodes; ++k) {
        rc.b[k] = 2.0 * k + 1.0;
        if (k >= 1) rc.c[k] = double(k) * double(k);
    }
    return gauss_rule(rc, n_nodes);
}

namespace {

// b_k = 0, c_k = k / n_eff for the weight e^{-n_eff x^2 / 2}; closed form,
// valid to any order.
RecurrenceCoeffs hermite_recurrence(double n_eff, double mass, int k_max) {
    RecurrenceCoeffs rc;
    rc.b.assign(k_max + 1, 0.0);
    rc.c.assign(k_max + 1, 0.0);
    rc.c[0] = mass;
    for (int k = 1; k <= k_max; ++k) rc.c[k] = double(k) / n_eff;
    return rc;
}

bool pure_quadratic(const Potential& v) {
    return v.coeffs.size() == 3 && v.coeffs[1] == 0.0;
}

} // namespace

double truncation_radius(const Potential& v, double n_param, int degree_budget) {
    auto margin = [&](double x) {
        return n_param * (v(x) - v(0.0)) - (degree_budget + 2) * std::log1p(x) - 120.0;
    };
    double radius = 2.0;
    while (margin(radius) < 0.0 || margin(-radius) < 0.0) {
        radius *= 2.0;
        if (radius > 1e6) throw std::domain_error("truncation_radius: potential too flat");
    }
    return radius;
}

RecurrenceCoeffs monic_ops_from_potential(const Potential& v, double n_param, int k_max,
                                          int grid_nodes) {
    v.validate();
    if (n_param < 1.0)
        throw std::invalid_argument("monic_ops_from_potential: N parameter must be >= 1");
    if (k_max < 0 || k_max > 20)
        throw std::invalid_argument(
            "monic_ops_from_potential: k_max capped at 20 (moment conditioning)");

    const double radius = truncation_radius(v, n_param, 2 * k_max + 2);
    QuadratureRule grid = gauss_legendre(grid_nodes, -radius, radius);
    std::vector<double> w(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        w[i] = grid.weights[i] * std::exp(-n_param * v(grid.nodes[i]));

    RecurrenceCoeffs rc;
    rc.b.assign(k_max + 1, 0.0);
    rc.c.assign(k_max + 1, 0.0);
    std::vector<double> pi_prev(grid.nodes.size(), 0.0), pi_cur(grid.nodes.size(), 1.0);
    double norm_prev = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        double norm = 0.0, xnorm = 0.0;
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
            const double t = w[i] * pi_cur[i] * pi_cur[i];
            norm += t;
            xnorm += t * grid.nodes[i];
        }
        if (!(norm > 0.0))
            throw std::runtime_error(
                "monic_ops_from_potential: lost positivity of the norm at index " +
                std::to_string(k));
        rc.b[k] = xnorm / norm;
        rc.c[k] = (k == 0) ? norm : norm / norm_prev;
        const double ck = (k == 0) ? 0.0 : rc.c[k];
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
            const double nxt = (grid.nodes[i] - rc.b[k]) * pi_cur[i] - ck * pi_prev[i];
            pi_prev[i] = pi_cur[i];
            pi_cur[i] = nxt;
        }
        norm_prev = norm;
    }
    return rc;
}

QuadratureRule potential_quadrature(const Potential& v, double n_param, int n_nodes) {
    v.validate();
    if (pure_quadratic(v)) {
        const double n_eff = 2.0 * n_param * v.coeffs[2];
        const double mass = std::sqrt(2.0 * kPi / n_eff) * std::exp(-n_param * v.coeffs[0]);
        return gauss_rule(hermite_recurrence(n_eff, mass, n_nodes), n_nodes);
    }
    if (n_nodes > 21)
        throw std::invalid_argument(
            "potential_quadrature: node count for a general potential is capped at 21 "
            "(Stieltjes coefficients stop at order 20)");
    return gauss_rule(monic_ops_from_potential(v, n_param, std::min(n_nodes, 20)), n_nodes);
}

} // namespace permpoly
