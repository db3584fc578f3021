#include "permpoly/montecarlo.hpp"

#include <cmath>
#include <span>
#include <stdexcept>

#include <Eigen/LU>

#include "permpoly/parallel.hpp"
#include "permpoly/perm.hpp"
#include "permpoly/rng.hpp"

namespace permpoly {

namespace {

MCEstimate summarize(std::span<const cplx> vals, std::uint64_t seed) {
    const std::size_t m = vals.size();
    const cplx mean = pairwise_sum(vals) / double(m);
    std::vector<cplx> dev2(m);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx d = vals[i] - mean;
        dev2[i] = cplx(d.real() * d.real(), d.imag() * d.imag());
    }
    const cplx var = pairwise_sum(std::span<const cplx>(dev2)) / double(m - 1);
    return MCEstimate{mean, std::sqrt((var.real() + var.imag()) / double(m)), m, seed};
}

cplx perm_char_matrix(const CMatrix& h, cplx mu) {
    CMatrix b = -h;
    for (int i = 0; i < h.rows(); ++i) b(i, i) += mu;
    return per_ryser(b);
}

cplx det_char_matrix(const CMatrix& h, cplx mu) {
    CMatrix b = -h;
    for (int i = 0; i < h.rows(); ++i) b(i, i) += mu;
    return b.determinant();
}

} // namespace

MCEstimate mc_expectation(std::size_t samples, std::uint64_t seed, int workers,
                          const std::function<cplx(std::size_t, std::mt19937_64&)>& sample_fn) {
    if (samples < 2) throw std::invalid_argument("mc_expectation: need at least 2 samples");
    std::vector<cplx> vals(samples);
    parallel_for(samples, workers, [&](std::size_t i) {
        auto eng = rng::substream(seed, i);
        vals[i] = sample_fn(i, eng);
    });
    return summarize(vals, seed);
}

std::vector<MCEstimate> mc_mean_perm_poly(const EnsembleSpec& spec, std::size_t samples,
                                          std::uint64_t seed, int workers) {
    spec.validate();
    if (samples < 100) throw std::invalid_argument("mc_mean_perm_poly: need at least 100 samples");
    const int n = spec.n;
    std::vector<std::vector<cplx>> coeff_vals(n + 1, std::vector<cplx>(samples));
    parallel_for(samples, workers, [&](std::size_t i) {
        auto eng = rng::substream(seed, i);
        const Poly p = perm_poly(sample_matrix(spec, eng));
        for (int k = 0; k <= n; ++k) coeff_vals[k][i] = p.coeffs[k];
    });
    std::vector<MCEstimate> out(n + 1);
    for (int k = 0; k <= n; ++k)
        out[k] = summarize(std::span<const cplx>(coeff_vals[k]), seed);
    return out;
}

MCEstimate mc_two_point(const EnsembleSpec& spec, cplx mu1, cplx mu2, bool conjugate_second,
                        std::size_t samples, std::uint64_t seed, int workers) {
    spec.validate();
    const bool non_hermitian =
        spec.kind == EnsembleKind::CUE || spec.kind == EnsembleKind::Ginibre;
    if (non_hermitian && !conjugate_second)
        throw std::invalid_argument(
            "mc_two_point: CUE/Ginibre two-point functions require conjugate_second "
            "(the unconjugated product is degenerate)");
    return mc_expectation(samples, seed, workers, [&](std::size_t, std::mt19937_64& eng) {
        const CMatrix h = sample_matrix(spec, eng);
        const cplx p1 = perm_char_matrix(h, mu1);
        const cplx p2 = perm_char_matrix(h, mu2);
        return conjugate_second ? p1 * std::conj(p2) : p1 * p2;
    });
}

MCEstimate mc_char_two_point(const EnsembleSpec& spec, cplx mu1, cplx mu2,
                             std::size_t samples, std::uint64_t seed, int workers) {
    spec.validate();
    return mc_expectation(samples, seed, workers, [&](std::size_t, std::mt19937_64& eng) {
        const CMatrix h = sample_matrix(spec, eng);
        return det_char_matrix(h, mu1) * det_char_matrix(h, mu2);
    });
}

DualityReport duality_check(int n, int big_n, double mu, std::size_t samples,
                            std::uint64_t seed, int workers) {
    if (n < 1 || n > 6 || big_n < 1 || big_n > 6)
        throw std::invalid_argument("duality_check: orders capped at 6");
    MCEstimate lhs = mc_expectation(samples, seed, workers,
                                    [&](std::size_t, std::mt19937_64& eng) {
                                        const CMatrix h = sample_gue(big_n, eng);
                                        cplx p(1.0);
                                        const cplx base = perm_char_matrix(h, mu);
                                        for (int k = 0; k < n; ++k) p *= base;
                                        return p;
                                    });
    // Opposite side: n x n Hermitian under the same weight e^{-(N/2)Tr q^2},
    // i.e. the n x n sampler rescaled to entry variance 1/N.
    const double rescale = std::sqrt(double(n) / double(big_n));
    MCEstimate rhs = mc_expectation(samples, seed + 1, workers,
                                    [&](std::size_t, std::mt19937_64& eng) {
                                        CMatrix q = sample_gue(n, eng) * rescale;
                                        cplx p(1.0);
                                        const cplx base = perm_char_matrix(q, mu);
                                        for (int k = 0; k < big_n; ++k) p *= base;
                                        return p;
                                    });
    const double combined = std::hypot(lhs.stderr_, rhs.stderr_);
    const double z = combined > 0.0 ? std::abs(lhs.mean - rhs.mean) / combined : 0.0;
    return DualityReport{lhs, rhs, z};
}

cplx maingau_rhs_moment(cplx mu1, cplx mu2, int big_n) {
    if (big_n < 1 || big_n > 20)
        throw std::invalid_argument("maingau_rhs_moment: N in [1, 20]");
    const int n = big_n;
    auto binom = [](int a, int b) {
        double acc = 1.0;
        for (int j = 1; j <= b; ++j) acc = acc * double(a - b + j) / double(j);
        return acc;
    };
    auto dfact = [](int j) {
        double acc = 1.0;
        for (int t = j - 1; t > 0; t -= 2) acc *= t;
        return acc;
    };
    // [Per(diag(mu) - q)]^N = [(mu1-q11)(mu2-q22) + |q12|^2]^N expanded with
    // E q11^{2j} = (2j-1)!!/N^j, E |q12|^{2j} = j!/N^j.
    auto shifted_moment = [&](cplx mu, int k) {
        cplx acc(0.0);
        for (int j = 0; j <= k; j += 2)
            acc += binom(k, j) * std::pow(mu, k - j) * dfact(j) / std::pow(double(n), j / 2.0);
        return acc;
    };
    auto fact = [](int k) {
        double acc = 1.0;
        for (int j = 2; j <= k; ++j) acc *= j;
        return acc;
    };
    cplx acc(0.0);
    for (int k = 0; k <= n; ++k)
        acc += binom(n, k) * shifted_moment(mu1, k) * shifted_moment(mu2, k) *
               fact(n - k) / std::pow(double(n), double(n - k));
    return acc;
}

MCEstimate maingau_rhs_mc(cplx mu1, cplx mu2, int big_n, std::size_t samples,
                          std::uint64_t seed, int workers) {
    if (big_n < 1 || big_n > 20)
        throw std::invalid_argument("maingau_rhs_mc: N in [1, 20]");
    const double diag_sd = 1.0 / std::sqrt(double(big_n));
    const double off_sd = 1.0 / std::sqrt(2.0 * big_n);
    return mc_expectation(samples, seed, workers, [&](std::size_t, std::mt19937_64& eng) {
        const double q11 = diag_sd * rng::gaussian(eng);
        const double q22 = diag_sd * rng::gaussian(eng);
        const cplx q12(off_sd * rng::gaussian(eng), off_sd * rng::gaussian(eng));
        const cplx per = (mu1 - q11) * (mu2 - q22) + std::norm(q12);
        cplx p(1.0);
        for (int k = 0; k < big_n; ++k) p *= per;
        return p;
    });
}

} // namespace permpoly
