#include "permpoly/perm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "permpoly/parallel.hpp"
#include "permpoly/rng.hpp"

namespace permpoly {

namespace {

int checked_dim(const CMatrix& a, int cap, const char* what) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
    if (!a.allFinite())
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
    const int n = static_cast<int>(a.rows());
    if (n < 1 || n > cap)
        throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(n) +
                                    " outside supported range [1, " + std::to_string(cap) + "]");
    return n;
}

} // namespace

cplx per_naive(const CMatrix& a) {
    const int n = checked_dim(a, 10, "per_naive");
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    cplx sum(0.0);
    do {
        cplx prod(1.0);
        for (int i = 0; i < n; ++i) prod *= a(i, sigma[i]);
        sum += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return sum;
}

cplx per_ryser(const CMatrix& a) {
    const int n = checked_dim(a, 32, "per_ryser");
    // Per(A) = (-1)^n sum_{S != 0} (-1)^|S| prod_i sum_{j in S} A_ij,
    // visiting subsets in Gray order so each step touches one column.
    std::vector<cplx> row(n, cplx(0.0));
    cplx sum(0.0);
    std::uint64_t gray = 0;
    int popcount = 0;
    const std::uint64_t total = (n == 32) ? 0xffffffffULL : ((1ULL << n) - 1);
    for (std::uint64_t k = 1; k <= total; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t flip = next ^ gray;
        const int j = std::countr_zero(flip);
        if (next & flip) {
            for (int i = 0; i < n; ++i) row[i] += a(i, j);
            ++popcount;
        } else {
            for (int i = 0; i < n; ++i) row[i] -= a(i, j);
            --popcount;
        }
        gray = next;
        cplx prod(1.0);
        for (int i = 0; i < n; ++i) prod *= row[i];
        sum += (popcount & 1) ? -prod : prod;
    }
    return ((n & 1) ? -sum : sum);
}

cplx per_glynn(const CMatrix& a) {
    const int n = checked_dim(a, 32, "per_glynn");
    if (n == 1) return a(0, 0);
    // Per(A) = 2^{1-n} sum_{delta, delta_0 = +1} (prod delta) prod_j sum_i delta_i A_ij
    std::vector<cplx> col(n, cplx(0.0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) col[j] += a(i, j);
    cplx prod(1.0);
    for (int j = 0; j < n; ++j) prod *= col[j];
    cplx sum = prod;
    double sign = 1.0;
    std::uint64_t gray = 0;
    const std::uint64_t total = (1ULL << (n - 1)) - 1;
    for (std::uint64_t k = 1; k <= total; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t flip = next ^ gray;
        const int i = std::countr_zero(flip) + 1; // delta_0 pinned to +1
        const double two = (next & flip) ? -2.0 : 2.0;
        for (int j = 0; j < n; ++j) col[j] += two * a(i, j);
        gray = next;
        sign = -sign;
        prod = cplx(1.0);
        for (int j = 0; j < n; ++j) prod *= col[j];
        sum += sign * prod;
    }
    return sum * std::ldexp(1.0, 1 - n);
}

cplx per_contour(const CMatrix& a, int points_per_circle) {
    const int n = checked_dim(a, 8, "per_contour");
    const int k_pts = points_per_circle == 0 ? n + 2 : points_per_circle;
    if (k_pts < n + 2)
        throw std::invalid_argument("per_contour: " + std::to_string(k_pts) +
                                    " points per circle alias the degree-" + std::to_string(n) +
                                    " integrand; need at least n + 2 = " + std::to_string(n + 2));
    if (n == 1) return a(0, 0);

    std::vector<double> zr(k_pts), zi(k_pts);
    for (int k = 0; k < k_pts; ++k) {
        zr[k] = std::cos(2.0 * kPi * k / k_pts);
        zi[k] = std::sin(2.0 * kPi * k / k_pts);
    }
    // The integrand is invariant under rotating every circle by one node, so
    // the grid sum equals k_pts times the slice with the first variable
    // pinned at z = 1. Innermost variable runs as k_pts SIMD-friendly lanes.
    const int digits = n - 2; // free variables between the pinned and lane ones
    std::vector<double> lane_r(static_cast<std::size_t>(n) * k_pts);
    std::vector<double> lane_i(static_cast<std::size_t>(n) * k_pts);
    for (int i = 0; i < n; ++i) {
        const cplx f = a(i, n - 1);
        for (int k = 0; k < k_pts; ++k) {
            lane_r[i * k_pts + k] = f.real() * zr[k] - f.imag() * zi[k];
            lane_i[i * k_pts + k] = f.real() * zi[k] + f.imag() * zr[k];
        }
    }

    std::vector<int> m(std::max(digits, 1), 0);
    // cum[d] = row sums over columns 0..d+... level d includes columns 0..d+1? level d covers columns 0..(d+1)
    // cum level d (0-based) holds rows summed over columns 0..d along with the pinned column 0.
    std::vector<std::vector<cplx>> cum(static_cast<std::size_t>(digits) + 1,
                                       std::vector<cplx>(n));
    std::vector<cplx> wcum(static_cast<std::size_t>(digits) + 1, cplx(1.0));
    for (int i = 0; i < n; ++i) cum[0][i] = a(i, 0); // z = 1 on the pinned circle
    auto rebuild = [&](int d) { // digit d corresponds to column d+1
        const cplx z(zr[m[d]], zi[m[d]]);
        for (int i = 0; i < n; ++i) cum[d + 1][i] = cum[d][i] + a(i, d + 1) * z;
        wcum[d + 1] = wcum[d] * std::conj(z);
    };
    for (int d = 0; d < digits; ++d) rebuild(d);

    std::vector<double> pr(k_pts), pi(k_pts);
    long double acc_r = 0.0L, acc_i = 0.0L;
    while (true) {
        const std::vector<cplx>& base = cum[digits];
        for (int k = 0; k < k_pts; ++k) {
            pr[k] = 1.0;
            pi[k] = 0.0;
        }
        for (int i = 0; i < n; ++i) {
            const double ar = base[i].real(), ai = base[i].imag();
            const double* lr = &lane_r[i * k_pts];
            const double* li = &lane_i[i * k_pts];
            for (int k = 0; k < k_pts; ++k) {
                const double vr = ar + lr[k];
                const double vi = ai + li[k];
                const double tr = pr[k] * vr - pi[k] * vi;
                pi[k] = pr[k] * vi + pi[k] * vr;
                pr[k] = tr;
            }
        }
        double sr = 0.0, si = 0.0;
        for (int k = 0; k < k_pts; ++k) {
            sr += zr[k] * pr[k] + zi[k] * pi[k]; // multiply by conj(z_k)
            si += zr[k] * pi[k] - zi[k] * pr[k];
        }
        const cplx w = wcum[digits];
        acc_r += static_cast<long double>(w.real() * sr - w.imag() * si);
        acc_i += static_cast<long double>(w.real() * si + w.imag() * sr);

        int d = digits - 1;
        while (d >= 0 && m[d] == k_pts - 1) m[d--] = 0;
        if (d < 0) break;
        ++m[d];
        for (int e = d; e < digits; ++e) rebuild(e);
    }
    const double norm = std::pow(static_cast<double>(k_pts), n - 1);
    return cplx(static_cast<double>(acc_r / norm), static_cast<double>(acc_i / norm));
}

cplx per_contour_full(const CMatrix& a, int points_per_circle) {
    const int n = checked_dim(a, 2, "per_contour_full");
    const int k_pts = points_per_circle;
    if (k_pts < n + 2)
        throw std::invalid_argument("per_contour_full: need at least n + 2 points per circle");
    std::vector<cplx> z(k_pts);
    for (int k = 0; k < k_pts; ++k)
        z[k] = std::polar(1.0, 2.0 * kPi * k / k_pts);

    // Full grid over n z-circles and n xi-circles; integrand
    // exp(xi* A z) * prod_k xi_k conj(z_k).
    const int vars = 2 * n;
    std::vector<int> m(vars, 0);
    cplx acc(0.0);
    while (true) {
        cplx bilinear(0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                bilinear += std::conj(z[m[n + i]]) * a(i, j) * z[m[j]];
        cplx w(1.0);
        for (int k = 0; k < n; ++k) w *= std::conj(z[m[k]]) * z[m[n + k]];
        acc += std::exp(bilinear) * w;

        int d = vars - 1;
        while (d >= 0 && m[d] == k_pts - 1) m[d--] = 0;
        if (d < 0) break;
        ++m[d];
    }
    return acc / std::pow(static_cast<double>(k_pts), vars);
}

Poly perm_poly(const CMatrix& a) {
    const int n = checked_dim(a, 24, "perm_poly");
    // p(mu) = sum_T prod_{i in T} (mu - s_i(T)) * prod_{i not in T} s_i(T),
    // s_i(T) = sum_{j in T} A_ij: the principal-submatrix permanent sums of
    // every order, collected in one Gray-code sweep.
    std::vector<cplx> s(n, cplx(0.0));
    std::vector<cplx> coeffs(n + 1, cplx(0.0));
    std::vector<cplx> buf(n + 1);
    std::uint64_t gray = 0;
    const std::uint64_t total = (1ULL << n) - 1;
    for (std::uint64_t k = 1; k <= total; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t flip = next ^ gray;
        const int j = std::countr_zero(flip);
        if (next & flip)
            for (int i = 0; i < n; ++i) s[i] += a(i, j);
        else
            for (int i = 0; i < n; ++i) s[i] -= a(i, j);
        gray = next;

        cplx outside(1.0);
        for (int i = 0; i < n; ++i)
            if (!((next >> i) & 1)) outside *= s[i];
        if (outside == cplx(0.0)) continue;

        int deg = 0;
        buf[0] = outside;
        for (int i = 0; i < n; ++i) {
            if (!((next >> i) & 1)) continue;
            buf[deg + 1] = buf[deg];
            for (int t = deg; t > 0; --t) buf[t] = buf[t - 1] - s[i] * buf[t];
            buf[0] = -s[i] * buf[0];
            ++deg;
        }
        for (int t = 0; t <= deg; ++t) coeffs[t] += buf[t];
    }
    return Poly(std::move(coeffs));
}

MCEstimate per_gaussian_estimate(const CMatrix& f, std::size_t samples,
                                 std::uint64_t seed, int workers) {
    const int n = checked_dim(f, 64, "per_gaussian_estimate");
    if ((f - f.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + f.cwiseAbs().maxCoeff()))
        throw std::domain_error("per_gaussian_estimate: matrix is not Hermitian");
    if (samples < 2)
        throw std::invalid_argument("per_gaussian_estimate: need at least 2 samples");
    Eigen::LLT<CMatrix> llt(f);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("per_gaussian_estimate: matrix is not positive definite");
    const CMatrix e = llt.matrixL();

    std::vector<cplx> vals(samples);
    parallel_for(samples, workers, [&](std::size_t idx) {
        auto eng = rng::substream(seed, idx);
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = rng::complex_gaussian(eng);
        Eigen::VectorXcd w = e * v;
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= std::norm(w(i));
        vals[idx] = cplx(prod, 0.0);
    });

    const cplx mean = pairwise_sum(std::span<const cplx>(vals)) / double(samples);
    std::vector<cplx> dev2(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const cplx d = vals[i] - mean;
        dev2[i] = cplx(d.real() * d.real(), d.imag() * d.imag());
    }
    const cplx var = pairwise_sum(std::span<const cplx>(dev2)) / double(samples - 1);
    return MCEstimate{mean, std::sqrt((var.real() + var.imag()) / double(samples)),
                      samples, seed};
}

} // namespace permpoly
