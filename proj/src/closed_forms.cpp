#include "permpoly/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "permpoly/orthopoly.hpp"

namespace permpoly {

namespace {

double factorial_d(int k) {
    double acc = 1.0;
    for (int j = 2; j <= k; ++j) acc *= j;
    return acc;
}

double binomial_d(int n, int k) {
    double acc = 1.0;
    for (int j = 1; j <= k; ++j) acc = acc * double(n - k + j) / double(j);
    return acc;
}

double double_factorial_odd(int j) { // (j-1)!! for even j
    double acc = 1.0;
    for (int t = j - 1; t > 0; t -= 2) acc *= t;
    return acc;
}

cplx pow_int(cplx base, int e) {
    cplx acc(1.0);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

cplx i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return cplx(1.0, 0.0);
        case 1: return cplx(0.0, 1.0);
        case 2: return cplx(-1.0, 0.0);
        default: return cplx(0.0, -1.0);
    }
}

// Coefficients of the monic Hermite-type pi_k for weight e^{-N x^2/2}.
std::vector<double> hermite_coeffs(int k, double n_param) {
    std::vector<double> prev{1.0};
    if (k == 0) return prev;
    std::vector<double> cur{0.0, 1.0};
    for (int j = 1; j < k; ++j) {
        std::vector<double> nxt(j + 2, 0.0);
        for (std::size_t t = 0; t < cur.size(); ++t) nxt[t + 1] += cur[t];
        for (std::size_t t = 0; t < prev.size(); ++t) nxt[t] -= (double(j) / n_param) * prev[t];
        prev = std::move(cur);
        cur = std::move(nxt);
    }
    return cur;
}

struct ScaledTriple {
    cplx pm1, p0, p1; // pi_{k-1}, pi_k, pi_{k+1} times 2^exp2
    int exp2;
};

ScaledTriple hermite_triple_scaled(int k, double n_param, cplx x) {
    if (k < 1) throw std::invalid_argument("hermite_triple_scaled: order must be >= 1");
    cplx pm1(1.0), p0 = x;
    int exp2 = 0;
    for (int j = 1; j < k; ++j) {
        const cplx nxt = x * p0 - (double(j) / n_param) * pm1;
        pm1 = p0;
        p0 = nxt;
        const double mag = std::abs(p0.real()) + std::abs(p0.imag());
        if (mag > 0x1p+500) {
            pm1 *= 0x1p-500;
            p0 *= 0x1p-500;
            exp2 += 500;
        } else if (mag > 0.0 && mag < 0x1p-500) {
            pm1 *= 0x1p+500;
            p0 *= 0x1p+500;
            exp2 -= 500;
        }
    }
    const cplx p1 = x * p0 - (double(k) / n_param) * pm1;
    return {pm1, p0, p1, exp2};
}

} // namespace

// ---------------------------------------------------------------------------

Poly mean_perm_poly_general(const Potential& v, int n) {
    v.validate();
    if (n < 1 || n > 10)
        throw std::invalid_argument("mean_perm_poly_general: n outside [1, 10]");
    const int degree_needed = 3 * n - 2;
    const int nodes = std::max(degree_needed / 2 + 2, 12);
    const QuadratureRule rule = potential_quadrature(v, double(n), nodes);
    if (2 * nodes - 1 < degree_needed)
        throw std::invalid_argument("mean_perm_poly_general: quadrature degree shortfall");
    const RecurrenceCoeffs rc = monic_ops_from_potential(v, double(n), n);

    // Projection of (mu - lambda)^{2N-1} onto pi_{N-1}: the mu^k coefficient
    // carries C(2N-1, k) (-1)^{2N-1-k} int lambda^{2N-1-k} pi_{N-1} dw.
    std::vector<double> pi_vals(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        pi_vals[i] = eval_recurrence(rc, n - 1, rule.nodes[i]);
    std::vector<cplx> coeffs(n + 1);
    double norm = 0.0;
    for (int k = 0; k <= n; ++k) {
        double integral = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            integral += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 1 - k) * pi_vals[i];
        const double sign = ((2 * n - 1 - k) % 2 == 0) ? 1.0 : -1.0;
        const double u = binomial_d(2 * n - 1, k) * sign * integral;
        coeffs[k] = cplx(u, 0.0);
        if (k == n) norm = u;
    }
    const double scale = std::abs(coeffs[0].real());
    if (std::abs(norm) < 1e-300 || std::abs(norm) < 1e-14 * std::max(1.0, scale))
        throw std::domain_error("mean_perm_poly_general: singular normalization (a_N ~ 0)");
    for (cplx& c : coeffs) c /= norm;
    coeffs[n] = cplx(1.0);
    return Poly(std::move(coeffs));
}

double gaussian_projection_norm(int n) {
    if (n < 1 || n > 10)
        throw std::invalid_argument("gaussian_projection_norm: n outside [1, 10]");
    const Potential v = Potential::gaussian();
    const int nodes = std::max(3 * n / 2 + 2, 12);
    const QuadratureRule rule = potential_quadrature(v, double(n), nodes);
    const RecurrenceCoeffs rc = monic_ops_from_potential(v, double(n), n);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        integral += rule.weights[i] * std::pow(rule.nodes[i], n - 1) *
                    eval_recurrence(rc, n - 1, rule.nodes[i]);
    return binomial_d(2 * n - 1, n) * integral;
}

cplx mean_perm_poly_gue(int n, cplx mu) {
    if (n < 1) throw std::invalid_argument("mean_perm_poly_gue: n must be >= 1");
    return i_pow(n) * hermite_monic(n, double(n), cplx(0.0, -1.0) * mu);
}

Poly mean_perm_poly_gue_coeffs(int n) {
    if (n < 1) throw std::invalid_argument("mean_perm_poly_gue_coeffs: n must be >= 1");
    const std::vector<double> pi = hermite_coeffs(n, double(n));
    std::vector<cplx> out(n + 1);
    for (int k = 0; k <= n; ++k)
        out[k] = cplx((i_pow(n - k) * pi[k]).real(), 0.0); // i^n (-i)^k = i^{n-k}
    return Poly(std::move(out));
}

cplx mean_perm_poly_goe(int n, cplx mu) {
    if (n < 1) throw std::invalid_argument("mean_perm_poly_goe: n must be >= 1");
    const cplx arg = cplx(0.0, -1.0) * std::sqrt(2.0) * mu;
    return i_pow(n) * std::pow(2.0, -0.5 * n) * hermite_monic(n, double(n), arg);
}

Poly mean_perm_poly_goe_coeffs(int n) {
    if (n < 1) throw std::invalid_argument("mean_perm_poly_goe_coeffs: n must be >= 1");
    const std::vector<double> pi = hermite_coeffs(n, double(n));
    const double s2 = std::sqrt(2.0);
    std::vector<cplx> out(n + 1);
    for (int k = 0; k <= n; ++k) {
        const cplx factor = i_pow(n) * std::pow(2.0, -0.5 * n) *
                            pow_int(cplx(0.0, -1.0) * s2, k);
        out[k] = cplx((factor * pi[k]).real(), 0.0);
    }
    return Poly(std::move(out));
}

// ---------------------------------------------------------------------------

cplx char_two_point_gue(int n, cplx x, cplx y, bool confluent_limit) {
    if (n < 1) throw std::invalid_argument("char_two_point_gue: n must be >= 1");
    const double scale = std::max({std::abs(x), std::abs(y), 1.0});
    if (std::abs(x - y) <= 1e-12 * scale) {
        if (!confluent_limit)
            throw std::domain_error(
                "char_two_point_gue: coincident arguments; pass confluent_limit");
        const ScaledTriple t = hermite_triple_scaled(n, double(n), x);
        // d/dy limit: pi'_{n+1} pi_n - pi_{n+1} pi'_n with pi'_k = k pi_{k-1}
        const cplx val = double(n + 1) * t.p0 * t.p0 - double(n) * t.p1 * t.pm1;
        return val * std::exp2(2.0 * t.exp2);
    }
    const ScaledTriple a = hermite_triple_scaled(n, double(n), x);
    const ScaledTriple b = hermite_triple_scaled(n, double(n), y);
    const cplx num = a.p1 * b.p0 - b.p1 * a.p0;
    return num / (x - y) * std::exp2(double(a.exp2 + b.exp2));
}

cplx two_point_gue(int n, cplx mu1, cplx mu2) {
    const cplx u = cplx(0.0, -1.0) * mu1;
    const cplx v = cplx(0.0, 1.0) * mu2;
    const double scale = std::max({std::abs(u), std::abs(v), 1.0});
    return char_two_point_gue(n, u, v, std::abs(u - v) <= 1e-12 * scale);
}

double dyson_kernel_ratio(int n, double mu, double delta) {
    if (n < 1) throw std::invalid_argument("dyson_kernel_ratio: n must be >= 1");
    if (!(mu > -2.0 && mu < 2.0))
        throw std::domain_error("dyson_kernel_ratio: mu outside the bulk (-2, 2)");
    const double rho = std::sqrt(4.0 - mu * mu) / (2.0 * kPi);
    const double mu2 = mu + delta / (kPi * double(n) * rho);
    if (!(mu2 > -2.0 && mu2 < 2.0))
        throw std::domain_error("dyson_kernel_ratio: displaced point leaves the bulk");
    if (delta == 0.0) return 1.0;
    const ScaledTriple a = hermite_triple_scaled(n, double(n), cplx(mu, 0.0));
    const ScaledTriple b = hermite_triple_scaled(n, double(n), cplx(mu2, 0.0));
    const double num = (a.p1 * b.p0 - b.p1 * a.p0).real() / (mu - mu2);
    const double den = (double(n + 1) * a.p0 * a.p0 - double(n) * a.p1 * a.pm1).real();
    // 2^{ea+eb} / 2^{2ea} = 2^{eb-ea}
    return num / den * std::exp2(double(b.exp2 - a.exp2));
}

cplx two_point_cue_sum(int n, cplx a, cplx b) {
    if (n < 1) throw std::invalid_argument("two_point_cue_sum: n must be >= 1");
    const cplx w = a * std::conj(b);
    cplx term = factorial_d(n) * factorial_d(n - 1) / factorial_d(2 * n - 1);
    cplx acc(0.0);
    for (int j = 0; j <= n; ++j) {
        acc += term;
        term *= w * double(2 * n - 1 - j) / double(j + 1);
    }
    return acc;
}

cplx two_point_cue_integral(int n, cplx a, cplx b) {
    if (n < 2)
        throw std::invalid_argument("two_point_cue_integral: integral form needs n >= 2");
    const cplx w = a * std::conj(b);
    const QuadratureRule rule = gauss_legendre(n + 2, 0.0, 1.0);
    cplx acc(0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        acc += rule.weights[i] * std::pow(1.0 - t, n - 2) * pow_int(w + t, n);
    }
    return double(n - 1) * acc;
}

cplx two_point_ginibre_sum(int n, cplx a, cplx b) {
    if (n < 1) throw std::invalid_argument("two_point_ginibre_sum: n must be >= 1");
    const cplx w = a * std::conj(b) * double(n);
    cplx term(1.0), acc(0.0);
    for (int k = 0; k <= n; ++k) {
        acc += term;
        term *= w / double(k + 1);
    }
    return acc * factorial_d(n) / std::pow(double(n), n);
}

cplx two_point_ginibre_integral(int n, cplx a, cplx b) {
    if (n < 1) throw std::invalid_argument("two_point_ginibre_integral: n must be >= 1");
    // N int e^{-NR} (w + R)^N dR = int e^{-u} (w + u/N)^N du
    const cplx w = a * std::conj(b);
    const QuadratureRule rule = gauss_laguerre(n + 2);
    cplx acc(0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * pow_int(w + rule.nodes[i] / double(n), n);
    return acc;
}

cplx two_point_goe(int n, cplx mu1, cplx mu2) {
    if (n < 1 || n > 20)
        throw std::invalid_argument(
            "two_point_goe: moment expansion supported for n in [1, 20]");
    const double var = 1.0 / (2.0 * n); // every Gaussian block under the stated weight
    auto shifted_moment = [&](cplx mu, int k) {
        cplx acc(0.0);
        for (int j = 0; j <= k; j += 2)
            acc += binomial_d(k, j) * pow_int(mu, k - j) * double_factorial_odd(j) *
                   std::pow(var, j / 2.0);
        return acc;
    };
    cplx acc(0.0);
    for (int k1 = 0; k1 <= n; ++k1) {
        for (int k2 = 0; k2 + k1 <= n; ++k2) {
            const int k3 = n - k1 - k2;
            const double multinom = factorial_d(n) / (factorial_d(k1) * factorial_d(k2) * factorial_d(k3));
            const cplx e1 = shifted_moment(mu1, k1) * shifted_moment(mu2, k1);
            const double e2 = factorial_d(k2) * std::pow(var, k2);
            const double e3 = factorial_d(k3) * std::pow(var, k3);
            acc += multinom * e1 * e2 * e3;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------

cplx hciz_rank_one(std::span<const double> lambda, cplx t) {
    const int n = static_cast<int>(lambda.size());
    if (n < 1) throw std::invalid_argument("hciz_rank_one: empty spectrum");
    double scale = 0.0, min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(lambda[i]));
        for (int j = i + 1; j < n; ++j)
            min_gap = std::min(min_gap, std::abs(lambda[i] - lambda[j]));
    }
    const bool degenerate = (n >= 2) && min_gap <= 1e-6 * std::max(1.0, scale);
    if (std::abs(t) > 1e-3 && !degenerate && n >= 2) {
        // Pole sum with gaps oriented as (lambda_i - lambda_j); the series
        // form below fixes the overall sign through the h_n identity.
        cplx acc(0.0);
        for (int i = 0; i < n; ++i) {
            double denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= lambda[i] - lambda[j];
            acc += std::exp(t * lambda[i]) / denom;
        }
        return factorial_d(n - 1) / pow_int(t, n - 1) * acc;
    }
    // Complete-symmetric series; entire in t, so it also covers t ~ 0 and
    // coincident spectra.
    constexpr int kMaxTerms = 600;
    std::vector<double> h(kMaxTerms + 1, 0.0);
    h[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int m = 1; m <= kMaxTerms; ++m) h[m] += lambda[i] * h[m - 1];
    cplx acc(0.0), tpow(1.0);
    double coef = 1.0; // (N-1)!/(N+k-1)! via coef_{k+1} = coef_k / (N+k)
    int quiet = 0;
    for (int k = 0; k <= kMaxTerms; ++k) {
        const cplx term = coef * tpow * h[k];
        acc += term;
        if (std::abs(term) <= 1e-14 * (std::abs(acc) + 1.0)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
        tpow *= t;
        coef /= double(n + k);
    }
    return acc;
}

cplx hciz_full(std::span<const double> lambda, std::span<const double> gamma, cplx beta) {
    const int n = static_cast<int>(lambda.size());
    if (n < 1 || gamma.size() != lambda.size())
        throw std::invalid_argument("hciz_full: spectra must be non-empty and equal length");
    if (beta == cplx(0.0)) return cplx(1.0);
    double scale = 1.0;
    for (int i = 0; i < n; ++i)
        scale = std::max({scale, std::abs(lambda[i]), std::abs(gamma[i])});
    auto vandermonde = [&](std::span<const double> v) {
        double acc = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double gap = v[i] - v[j];
                if (std::abs(gap) <= 1e-8 * scale)
                    throw std::domain_error(
                        "hciz_full: nearly degenerate spectrum; use hciz_rank_one or perturb");
                acc *= gap;
            }
        return acc;
    };
    const double dl = vandermonde(lambda);
    const double dg = vandermonde(gamma);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = std::exp(beta * lambda[i] * gamma[j]);
    double pref = 1.0;
    for (int k = 0; k < n; ++k) pref *= factorial_d(k);
    return pref / pow_int(beta, n * (n - 1) / 2) * m.determinant() / (dl * dg);
}

cplx fk_rank_one_series(cplx v2, int n) {
    if (n < 2) throw std::invalid_argument("fk_rank_one: defined for n >= 2");
    cplx term(1.0), acc(0.0);
    for (int j = 0; j < 400; ++j) {
        acc += term;
        term *= v2 / (double(j + 1) * double(n + j));
        if (std::abs(term) <= 1e-16 * (std::abs(acc) + 1.0)) break;
    }
    return acc;
}

namespace {
cplx bessel_i0_of_sq(cplx x) { // I0(2 sqrt(x)) = sum x^j / (j!)^2
    cplx term(1.0), acc(0.0);
    for (int j = 0; j < 400; ++j) {
        acc += term;
        term *= x / (double(j + 1) * double(j + 1));
        if (std::abs(term) <= 1e-17 * (std::abs(acc) + 1.0)) break;
    }
    return acc;
}
} // namespace

cplx fk_rank_one_quadrature(cplx v2, int n) {
    if (n < 2) throw std::invalid_argument("fk_rank_one: defined for n >= 2");
    const QuadratureRule rule = gauss_legendre(64, 0.0, 1.0);
    cplx acc(0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        acc += rule.weights[i] * std::pow(1.0 - t, n - 2) * bessel_i0_of_sq(t * v2);
    }
    return double(n - 1) * acc;
}

cplx complete_symmetric(int n, std::span<const cplx> x) {
    if (n < 0) return cplx(0.0);
    std::vector<cplx> h(n + 1, cplx(0.0));
    h[0] = cplx(1.0);
    for (const cplx& xi : x)
        for (int m = 1; m <= n; ++m) h[m] += xi * h[m - 1];
    return h[n];
}

cplx symfun1_lhs(int n, std::span<const cplx> x) {
    const int c = static_cast<int>(x.size());
    if (c < 1) throw std::invalid_argument("symfun1_lhs: empty argument list");
    if (n < -(c - 1))
        throw std::invalid_argument("symfun1_lhs: exponent n + N - 1 must be >= 0");
    double scale = 1.0;
    for (const cplx& xi : x) scale = std::max(scale, std::abs(xi));
    cplx acc(0.0);
    for (int i = 0; i < c; ++i) {
        cplx denom(1.0);
        for (int j = 0; j < c; ++j) {
            if (j == i) continue;
            const cplx gap = x[j] - x[i];
            if (std::abs(gap) <= 1e-8 * scale)
                throw std::domain_error("symfun1_lhs: arguments must be distinct");
            denom *= gap;
        }
        acc += pow_int(x[i], n + c - 1) / denom;
    }
    return (c % 2 == 0) ? -acc : acc;
}

// ---------------------------------------------------------------------------

double asymptotic_phi(PhiProfile profile, cplx z) {
    const double r2 = std::norm(z);
    switch (profile) {
        case PhiProfile::GuePermanental: {
            // Psi(q) = (q - s)^2/8 - log(q - s), s = sqrt(q^2 - 4) analytic
            // off [-2, 2]; additive constant set to zero.
            auto psi_re = [](cplx q) {
                const cplx s = std::sqrt(q - 2.0) * std::sqrt(q + 2.0);
                const cplx w = q - s;
                return (w * w).real() / 8.0 - std::log(std::abs(w));
            };
            const cplx q(z.imag(), z.real()); // y + ix
            const cplx qc(z.imag(), -z.real());
            return psi_re(q) + psi_re(qc);
        }
        case PhiProfile::CuePermanental:
            return r2 < 1.0 ? 2.0 * std::log(0.5 * (1.0 + r2)) : std::log(r2);
        case PhiProfile::CueCharacteristic:
            return r2 < 1.0 ? 0.0 : std::log(r2);
        case PhiProfile::GinibrePermanental:
            return r2 < 1.0 ? r2 - 1.0 : std::log(r2);
    }
    throw std::logic_error("asymptotic_phi: unreachable");
}

double marginal_density_oracle(EnsembleKind kind, double y) {
    switch (kind) {
        case EnsembleKind::GUE:
            return std::abs(y) <= 2.0 ? std::sqrt(4.0 - y * y) / (2.0 * kPi) : 0.0;
        case EnsembleKind::GOE:
            return y * y <= 8.0 ? std::sqrt(8.0 - y * y) / (4.0 * kPi) : 0.0;
        default:
            throw std::invalid_argument(
                "marginal_density_oracle: 1-D semicircle oracles exist for GUE/GOE only");
    }
}

double planar_density_oracle(EnsembleKind kind, cplx z) {
    const double r2 = std::norm(z);
    switch (kind) {
        case EnsembleKind::CUE: {
            const double d = 1.0 + r2;
            return r2 <= 1.0 ? 2.0 / (kPi * d * d) : 0.0;
        }
        case EnsembleKind::Ginibre:
            return r2 <= 1.0 ? 1.0 / kPi : 0.0;
        default:
            throw std::invalid_argument(
                "planar_density_oracle: 2-D profiles exist for CUE/Ginibre only");
    }
}

} // namespace permpoly
