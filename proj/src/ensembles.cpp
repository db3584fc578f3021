#include "permpoly/ensembles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>

#include "permpoly/rng.hpp"

namespace permpoly {

std::string to_string(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::GUE: return "GUE";
        case EnsembleKind::GOE: return "GOE";
        case EnsembleKind::CUE: return "CUE";
        case EnsembleKind::Ginibre: return "Ginibre";
        case EnsembleKind::UnitaryInvariant: return "UnitaryInvariant";
    }
    return "?";
}

EnsembleKind ensemble_from_string(const std::string& name) {
    if (name == "GUE" || name == "gue") return EnsembleKind::GUE;
    if (name == "GOE" || name == "goe") return EnsembleKind::GOE;
    if (name == "CUE" || name == "cue") return EnsembleKind::CUE;
    if (name == "Ginibre" || name == "ginibre") return EnsembleKind::Ginibre;
    if (name == "UnitaryInvariant" || name == "unitary-invariant")
        return EnsembleKind::UnitaryInvariant;
    throw std::invalid_argument("unknown ensemble kind: " + name);
}

void EnsembleSpec::validate() const {
    if (n < 1) throw std::invalid_argument("EnsembleSpec: n must be >= 1");
    if (kind == EnsembleKind::UnitaryInvariant) {
        if (!potential) throw std::invalid_argument("EnsembleSpec: UnitaryInvariant needs a potential");
        potential->validate();
    } else if (potential) {
        throw std::invalid_argument("EnsembleSpec: potential only valid for UnitaryInvariant");
    }
}

CMatrix sample_gue(int n, std::mt19937_64& eng) {
    if (n < 1) throw std::invalid_argument("sample_gue: n must be >= 1");
    CMatrix h(n, n);
    const double diag_sd = 1.0 / std::sqrt(double(n));
    const double off_sd = 1.0 / std::sqrt(2.0 * n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = cplx(diag_sd * rng::gaussian(eng), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v(off_sd * rng::gaussian(eng), off_sd * rng::gaussian(eng));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

CMatrix sample_goe(int n, std::mt19937_64& eng) {
    if (n < 1) throw std::invalid_argument("sample_goe: n must be >= 1");
    CMatrix h(n, n);
    const double diag_sd = 1.0 / std::sqrt(double(n));
    const double off_sd = 1.0 / std::sqrt(2.0 * n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = cplx(diag_sd * rng::gaussian(eng), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v(off_sd * rng::gaussian(eng), 0.0);
            h(i, j) = v;
            h(j, i) = v;
        }
    }
    return h;
}

CMatrix sample_cue(int n, std::mt19937_64& eng) {
    if (n < 1) throw std::invalid_argument("sample_cue: n must be >= 1");
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng::complex_gaussian(eng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        const cplx phase = d == cplx(0.0) ? cplx(1.0) : d / std::abs(d);
        q.col(j) *= phase;
    }
    return q;
}

CMatrix sample_ginibre(int n, std::mt19937_64& eng) {
    if (n < 1) throw std::invalid_argument("sample_ginibre: n must be >= 1");
    CMatrix z(n, n);
    const double sd = 1.0 / std::sqrt(double(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = sd * rng::complex_gaussian(eng);
    return z;
}

EigenvalueSample sample_unitary_invariant(const Potential& v, int n, std::mt19937_64& eng,
                                          const MetropolisParams& params) {
    v.validate();
    if (n < 1 || n > 8)
        throw std::invalid_argument("sample_unitary_invariant: n outside [1, 8]");
    const double step = params.step > 0.0 ? params.step : 0.6 / std::sqrt(double(n));

    // log density up to a constant: 2 sum_{i<j} ln|l_i - l_j| - N sum V(l_i)
    std::vector<double> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = 0.1 * (i - 0.5 * (n - 1));
    auto site_logweight = [&](int i, double x) {
        double acc = -double(n) * v(x);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double gap = std::abs(x - lam[j]);
            if (gap == 0.0) return -std::numeric_limits<double>::infinity();
            acc += 2.0 * std::log(gap);
        }
        return acc;
    };

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t accepted = 0, proposed = 0;
    auto sweep = [&] {
        for (int i = 0; i < n; ++i) {
            const double cur = lam[i];
            const double prop = cur + step * rng::gaussian(eng);
            const double dl = site_logweight(i, prop) - site_logweight(i, cur);
            ++proposed;
            if (dl >= 0.0 || unif(eng) < std::exp(dl)) {
                lam[i] = prop;
                ++accepted;
            }
        }
    };
    for (int s = 0; s < params.burn_in_sweeps; ++s) sweep();
    for (int s = 0; s < params.thin_sweeps; ++s) sweep();
    return {lam, double(accepted) / double(proposed)};
}

CMatrix compose_unitary_invariant_matrix(const std::vector<double>& lambdas,
                                         std::mt19937_64& eng) {
    const int n = static_cast<int>(lambdas.size());
    CMatrix u = sample_cue(n, eng);
    Eigen::VectorXcd d(n);
    for (int i = 0; i < n; ++i) d(i) = cplx(lambdas[i], 0.0);
    return u * d.asDiagonal() * u.adjoint();
}

CMatrix sample_matrix(const EnsembleSpec& spec, std::mt19937_64& eng) {
    spec.validate();
    switch (spec.kind) {
        case EnsembleKind::GUE: return sample_gue(spec.n, eng);
        case EnsembleKind::GOE: return sample_goe(spec.n, eng);
        case EnsembleKind::CUE: return sample_cue(spec.n, eng);
        case EnsembleKind::Ginibre: return sample_ginibre(spec.n, eng);
        case EnsembleKind::UnitaryInvariant: {
            const auto eigs = sample_unitary_invariant(*spec.potential, spec.n, eng);
            return compose_unitary_invariant_matrix(eigs.lambdas, eng);
        }
    }
    throw std::logic_error("sample_matrix: unreachable");
}

} // namespace permpoly
