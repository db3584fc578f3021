#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "permpoly/ensembles.hpp"
#include "permpoly/rng.hpp"

using namespace permpoly;

namespace {

struct Stat {
    double mean, stderr_;
};
template <typename Fn>
Stat sample_stat(std::size_t m, std::uint64_t seed, Fn&& fn) {
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        auto eng = rng::substream(seed, i);
        const double v = fn(eng);
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / m;
    const double var = (acc2 - m * mean * mean) / (m - 1);
    return {mean, std::sqrt(var / m)};
}

} // namespace

TEST_CASE("gue scaling conventions") {
    const int n = 3;
    const std::size_t m = 100000;
    const Stat diag = sample_stat(m, 101, [&](std::mt19937_64& eng) {
        const CMatrix h = sample_gue(n, eng);
        return h(0, 0).real() * h(0, 0).real();
    });
    CHECK(std::abs(diag.mean - 1.0 / n) < 4 * diag.stderr_);

    const Stat off = sample_stat(m, 102, [&](std::mt19937_64& eng) {
        const CMatrix h = sample_gue(n, eng);
        return std::norm(h(0, 1));
    });
    CHECK(std::abs(off.mean - 1.0 / n) < 4 * off.stderr_);

    auto eng = rng::substream(103, 0);
    const CMatrix h = sample_gue(5, eng);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("goe scaling conventions") {
    const int n = 4;
    const std::size_t m = 100000;
    const Stat diag = sample_stat(m, 104, [&](std::mt19937_64& eng) {
        const CMatrix h = sample_goe(n, eng);
        return h(0, 0).real() * h(0, 0).real();
    });
    CHECK(std::abs(diag.mean - 1.0 / n) < 4 * diag.stderr_);

    const Stat off = sample_stat(m, 105, [&](std::mt19937_64& eng) {
        const CMatrix h = sample_goe(n, eng);
        return h(0, 1).real() * h(0, 1).real();
    });
    CHECK(std::abs(off.mean - 1.0 / (2.0 * n)) < 4 * off.stderr_);

    auto eng = rng::substream(106, 0);
    const CMatrix h = sample_goe(5, eng);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cue is unitary and haar-symmetric") {
    auto eng = rng::substream(107, 0);
    for (int n : {1, 2, 5}) {
        const CMatrix u = sample_cue(n, eng);
        CHECK((u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
    const int n = 3;
    const std::size_t m = 100000;
    const Stat re = sample_stat(m, 108, [&](std::mt19937_64& e) {
        return sample_cue(n, e)(0, 0).real();
    });
    CHECK(std::abs(re.mean) < 4 * re.stderr_);
    const Stat mod = sample_stat(m, 109, [&](std::mt19937_64& e) {
        return std::norm(sample_cue(n, e)(0, 0));
    });
    CHECK(std::abs(mod.mean - 1.0 / n) < 4 * mod.stderr_);
    // n=1 brute force: |U| = 1 exactly
    auto e1 = rng::substream(110, 0);
    CHECK(std::abs(std::abs(sample_cue(1, e1)(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("ginibre entries") {
    const int n = 3;
    const std::size_t m = 100000;
    const Stat mod = sample_stat(m, 111, [&](std::mt19937_64& e) {
        return std::norm(sample_ginibre(n, e)(0, 0));
    });
    CHECK(std::abs(mod.mean - 1.0 / n) < 4 * mod.stderr_);
    const Stat re = sample_stat(m, 112, [&](std::mt19937_64& e) {
        return sample_ginibre(n, e)(0, 0).real();
    });
    CHECK(std::abs(re.mean) < 4 * re.stderr_);
    const Stat cov = sample_stat(m, 113, [&](std::mt19937_64& e) {
        const CMatrix z = sample_ginibre(n, e);
        return z(0, 0).real() * z(0, 1).real();
    });
    CHECK(std::abs(cov.mean) < 4 * cov.stderr_);
}

TEST_CASE("metropolis eigenvalue sampler") {
    const Potential v = Potential::gaussian();
    SUBCASE("second moment matches the 2x2 direct eigenvalue law") {
        const std::size_t m = 4000;
        const Stat mh = sample_stat(m, 114, [&](std::mt19937_64& e) {
            const auto s = sample_unitary_invariant(v, 2, e);
            return 0.5 * (s.lambdas[0] * s.lambdas[0] + s.lambdas[1] * s.lambdas[1]);
        });
        const Stat direct = sample_stat(m, 115, [&](std::mt19937_64& e) {
            const CMatrix h = sample_gue(2, e);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
            const auto& ev = es.eigenvalues();
            return 0.5 * (ev(0) * ev(0) + ev(1) * ev(1));
        });
        const double band = 5.0 * std::hypot(mh.stderr_, direct.stderr_);
        CHECK(std::abs(mh.mean - direct.mean) < band);
    }
    SUBCASE("parity and acceptance rate") {
        const std::size_t m = 2000;
        double acc_rate = 0.0;
        const Stat mean_l = sample_stat(m, 116, [&](std::mt19937_64& e) {
            const auto s = sample_unitary_invariant(v, 3, e);
            acc_rate = s.acceptance_rate;
            return (s.lambdas[0] + s.lambdas[1] + s.lambdas[2]) / 3.0;
        });
        CHECK(std::abs(mean_l.mean) < 4 * mean_l.stderr_);
        CHECK(acc_rate > 0.0);
        CHECK(acc_rate < 1.0);
    }
    SUBCASE("size cap") {
        auto eng = rng::substream(117, 0);
        CHECK_THROWS_AS(sample_unitary_invariant(v, 9, eng), std::invalid_argument);
    }
}

TEST_CASE("composed unitary-invariant matrix has the requested spectrum") {
    auto eng = rng::substream(118, 0);
    const std::vector<double> lam{-0.8, 0.2, 1.1};
    const CMatrix h = compose_unitary_invariant_matrix(lam, eng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    for (int i = 0; i < 3; ++i)
        CHECK(es.eigenvalues()(i) == doctest::Approx(lam[i]).epsilon(1e-10));
}

TEST_CASE("determinism of sample streams") {
    for (auto kind : {EnsembleKind::GUE, EnsembleKind::GOE, EnsembleKind::CUE,
                      EnsembleKind::Ginibre}) {
        const EnsembleSpec spec{kind, 4, {}};
        auto e1 = rng::substream(7, 3);
        auto e2 = rng::substream(7, 3);
        const CMatrix a = sample_matrix(spec, e1);
        const CMatrix b = sample_matrix(spec, e2);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("spec validation") {
    EnsembleSpec bad{EnsembleKind::GUE, 0, {}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    EnsembleSpec needs_pot{EnsembleKind::UnitaryInvariant, 2, {}};
    CHECK_THROWS_AS(needs_pot.validate(), std::invalid_argument);
    EnsembleSpec stray{EnsembleKind::GUE, 2, Potential::gaussian()};
    CHECK_THROWS_AS(stray.validate(), std::invalid_argument);
    CHECK(ensemble_from_string("ginibre") == EnsembleKind::Ginibre);
    CHECK_THROWS_AS(ensemble_from_string("wishart"), std::invalid_argument);
}
