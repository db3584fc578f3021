// Acceptance suite: one criterion per section, each printing PASS/FAIL with
// the measured values. Exit code is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permpoly/cli.hpp"
#include "permpoly/closed_forms.hpp"
#include "permpoly/montecarlo.hpp"
#include "permpoly/orthopoly.hpp"
#include "permpoly/perm.hpp"
#include "permpoly/rng.hpp"
#include "permpoly/roots.hpp"

using namespace permpoly;
using nlohmann::json;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t_start;

void begin(int id, const std::string& title) {
    std::cout << "criterion " << id << ": " << title << "\n";
    t_start = std::chrono::steady_clock::now();
}

void sub(bool ok, const std::string& detail) {
    std::cout << "  " << (ok ? "[ ok ]" : "[FAIL]") << " " << detail << "\n";
}

void finish(int id, bool pass) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << "  ("
              << std::fixed << secs << std::defaultfloat << " s)\n\n";
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

CMatrix random_complex(int n, std::mt19937_64& eng) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng::complex_gaussian(eng);
    return a;
}

double rel(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1e-30, std::abs(want));
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

void criterion_1() {
    begin(1, "exact kernel agreement on 200 random matrices, n <= 8, < 30 s");
    auto eng = rng::substream(1001, 0);
    double w_ryser = 0, w_glynn = 0, w_contour = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + k % 8;
        const CMatrix a = random_complex(n, eng);
        const cplx exact = per_naive(a);
        w_ryser = std::max(w_ryser, rel(per_ryser(a), exact));
        w_glynn = std::max(w_glynn, rel(per_glynn(a), exact));
        w_contour = std::max(w_contour, rel(per_contour(a), exact));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    sub(w_ryser <= 1e-12, "ryser worst rel err " + fmt(w_ryser) + " <= 1e-12");
    sub(w_glynn <= 1e-12, "glynn worst rel err " + fmt(w_glynn) + " <= 1e-12");
    sub(w_contour <= 1e-9, "contour worst rel err " + fmt(w_contour) + " <= 1e-9");
    sub(secs < 30.0, "runtime " + fmt(secs) + " s < 30 s");
    finish(1, w_ryser <= 1e-12 && w_glynn <= 1e-12 && w_contour <= 1e-9 && secs < 30.0);
}

void criterion_2() {
    begin(2, "mean permanental polynomial for the Gaussian weight, n <= 8");
    double w_coeff = 0, w_norm = 0;
    for (int n = 1; n <= 8; ++n) {
        const Poly general = mean_perm_poly_general(Potential::gaussian(), n);
        const Poly hermite_form = mean_perm_poly_gue_coeffs(n);
        for (int k = 0; k <= n; ++k)
            w_coeff = std::max(w_coeff,
                               std::abs(general.coeffs[k] - hermite_form.coeffs[k]));
        double closed = std::sqrt(2.0 * kPi / n) / std::pow(double(n), n);
        for (int k = n; k <= 2 * n - 1; ++k) closed *= k;
        w_norm = std::max(w_norm, std::abs(gaussian_projection_norm(n) - closed) / closed);
    }
    sub(w_coeff <= 1e-8, "worst coefficient gap " + fmt(w_coeff) + " <= 1e-8");
    sub(w_norm <= 1e-9, "normalization worst rel err " + fmt(w_norm) + " <= 1e-9");
    finish(2, w_coeff <= 1e-8 && w_norm <= 1e-9);
}

void criterion_3() {
    begin(3, "GUE suite: mean poly, two-point, characteristic relation, < 3 min");
    const auto t0 = std::chrono::steady_clock::now();
    const int workers = 4;
    bool pass = true;
    for (int n : {2, 4}) {
        const EnsembleSpec spec{EnsembleKind::GUE, n, {}};
        const auto est = mc_mean_perm_poly(spec, 100000, 1003 + n, workers);
        const Poly oracle = mean_perm_poly_gue_coeffs(n);
        double worst = 0;
        for (int k = 0; k < n; ++k) worst = std::max(worst, est[k].z_against(oracle.coeffs[k]));
        const bool ok = worst < 4.0 && est[n].mean == cplx(1.0) && est[n].stderr_ == 0.0;
        sub(ok, "mean poly n=" + std::to_string(n) + " worst |z| " + fmt(worst) + " < 4");
        pass = pass && ok;
    }
    const cplx m1(0.3), m2(-0.1);
    for (int n : {1, 2, 3}) {
        const EnsembleSpec spec{EnsembleKind::GUE, n, {}};
        const auto est = mc_two_point(spec, m1, m2, false, 200000, 1010 + n, workers);
        const double z = est.z_against(two_point_gue(n, m1, m2));
        sub(z < 4.0, "two-point n=" + std::to_string(n) + " |z| " + fmt(z) + " < 4");
        pass = pass && z < 4.0;
    }
    {
        const EnsembleSpec spec{EnsembleKind::GUE, 3, {}};
        const auto pp = mc_two_point(spec, m1, m2, false, 200000, 1014, workers);
        const auto dd = mc_char_two_point(spec, cplx(0, -1) * m1, cplx(0, 1) * m2, 200000,
                                          1015, workers);
        const double z = std::abs(pp.mean - dd.mean) / std::hypot(pp.stderr_, dd.stderr_);
        sub(z < 4.0, "<pp> vs <d(-i mu1) d(i mu2)> n=3 |z| " + fmt(z) + " < 4");
        pass = pass && z < 4.0;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    sub(secs < 180.0, "runtime " + fmt(secs) + " s < 180 s");
    finish(3, pass && secs < 180.0);
}

void criterion_4() {
    begin(4, "Hermitian-q representation and size-order duality");
    const cplx m1(0.37, 0.21), m2(-0.4, 0.11);
    double worst = 0;
    for (int n = 1; n <= 10; ++n)
        worst = std::max(worst, std::abs(maingau_rhs_moment(m1, m2, n) -
                                         two_point_gue(n, m1, m2)) /
                                    std::max(1.0, std::abs(two_point_gue(n, m1, m2))));
    sub(worst <= 1e-9, "moment form vs determinantal, N <= 10: worst " + fmt(worst));
    const auto rep = duality_check(2, 3, 0.5, 200000, 1020, 4);
    sub(rep.z < 4.0, "duality n=2, N=3, mu=0.5: |z| " + fmt(rep.z) + " < 4 (lhs " +
                         fmt(rep.lhs.mean.real()) + ", rhs " + fmt(rep.rhs.mean.real()) + ")");
    finish(4, worst <= 1e-9 && rep.z < 4.0);
}

void criterion_5() {
    begin(5, "CUE suite: closed forms, Monte Carlo, rank-one group integral");
    auto eng = rng::substream(1030, 0);
    double w_forms = 0;
    for (int n = 2; n <= 20; ++n) {
        const cplx a = 0.8 * rng::complex_gaussian(eng);
        const cplx b = 0.8 * rng::complex_gaussian(eng);
        w_forms = std::max(w_forms,
                           rel(two_point_cue_integral(n, a, b), two_point_cue_sum(n, a, b)));
    }
    sub(w_forms <= 1e-10, "sum vs integral form, N <= 20: worst rel " + fmt(w_forms));
    bool pass = w_forms <= 1e-10;
    const cplx m1(0.6, 0.2), m2(0.3, -0.5);
    for (int n : {1, 4}) {
        const EnsembleSpec spec{EnsembleKind::CUE, n, {}};
        const auto est = mc_two_point(spec, m1, m2, true, 100000, 1031 + n, 4);
        const double z = est.z_against(two_point_cue_sum(n, m1, m2));
        sub(z < 4.0, "two-point N=" + std::to_string(n) + " |z| " + fmt(z) + " < 4");
        pass = pass && z < 4.0;
    }
    {
        const int n = 3;
        Eigen::VectorXcd pv(n), qv(n), rv(n), sv(n);
        for (int i = 0; i < n; ++i) {
            pv(i) = 0.4 * rng::complex_gaussian(eng);
            qv(i) = 0.4 * rng::complex_gaussian(eng);
            rv(i) = 0.4 * rng::complex_gaussian(eng);
            sv(i) = 0.4 * rng::complex_gaussian(eng);
        }
        const CMatrix a_mat = pv * qv.adjoint();
        const CMatrix bstar = rv * sv.adjoint();
        const cplx v2 = (a_mat * bstar).trace();
        const auto mc = mc_expectation(100000, 1040, 4, [&](std::size_t, std::mt19937_64& e) {
            const CMatrix u = sample_cue(n, e);
            return std::exp((a_mat * u).trace() + (u.adjoint() * bstar).trace());
        });
        const double z = mc.z_against(fk_rank_one_series(v2, n));
        sub(z < 4.0, "rank-one coupling vs Haar MC at N=3: |z| " + fmt(z) + " < 4");
        pass = pass && z < 4.0;
    }
    finish(5, pass);
}

void criterion_6() {
    begin(6, "Ginibre suite: closed forms and Monte Carlo");
    auto eng = rng::substream(1050, 0);
    double w_forms = 0;
    for (int n = 1; n <= 20; ++n) {
        const cplx a = rng::complex_gaussian(eng);
        const cplx b = rng::complex_gaussian(eng);
        w_forms = std::max(w_forms, rel(two_point_ginibre_integral(n, a, b),
                                        two_point_ginibre_sum(n, a, b)));
    }
    sub(w_forms <= 1e-10, "sum vs integral form, N <= 20: worst rel " + fmt(w_forms));
    bool pass = w_forms <= 1e-10;
    const cplx m1(0.5, 0.3), m2(-0.2, 0.4);
    for (int n : {1, 3}) {
        const EnsembleSpec spec{EnsembleKind::Ginibre, n, {}};
        const auto est = mc_two_point(spec, m1, m2, true, 100000, 1051 + n, 4);
        const double z = est.z_against(two_point_ginibre_sum(n, m1, m2));
        sub(z < 4.0, "two-point N=" + std::to_string(n) + " |z| " + fmt(z) + " < 4");
        pass = pass && z < 4.0;
    }
    finish(6, pass);
}

void criterion_7() {
    begin(7, "GOE suite: mean polynomial, two-point, characteristic relation");
    bool pass = true;
    for (int n : {2, 4}) {
        const EnsembleSpec spec{EnsembleKind::GOE, n, {}};
        const auto est = mc_mean_perm_poly(spec, 100000, 1060 + n, 4);
        const Poly oracle = mean_perm_poly_goe_coeffs(n);
        double worst = 0;
        for (int k = 0; k < n; ++k) worst = std::max(worst, est[k].z_against(oracle.coeffs[k]));
        sub(worst < 4.0, "mean poly n=" + std::to_string(n) + " worst |z| " + fmt(worst));
        pass = pass && worst < 4.0;
    }
    const cplx m1(0.4), m2(0.1);
    for (int n : {2, 3}) {
        const EnsembleSpec spec{EnsembleKind::GOE, n, {}};
        const auto pp = mc_two_point(spec, m1, m2, false, 200000, 1070 + n, 4);
        const double z1 = pp.z_against(two_point_goe(n, m1, m2));
        sub(z1 < 4.0, "two-point vs moments n=" + std::to_string(n) + " |z| " + fmt(z1));
        const auto dd = mc_char_two_point(spec, cplx(0, 1) * m1, cplx(0, -1) * m2, 200000,
                                          1080 + n, 4);
        const double z2 = std::abs(pp.mean - dd.mean) / std::hypot(pp.stderr_, dd.stderr_);
        sub(z2 < 4.0, "<pp> vs <d(i mu1) d(-i mu2)> n=" + std::to_string(n) + " |z| " + fmt(z2));
        pass = pass && z1 < 4.0 && z2 < 4.0;
    }
    finish(7, pass);
}

void criterion_8() {
    begin(8, "group integrals vs Haar MC; pole-sum identity");
    auto eng = rng::substream(1090, 0);
    bool pass = true;
    for (int n : {2, 3}) {
        std::vector<double> lam(n);
        for (double& l : lam) l = rng::gaussian(eng);
        const cplx t(0.7, 0.15);
        CMatrix gamma = CMatrix::Zero(n, n);
        gamma(0, 0) = t;
        const auto mc =
            mc_expectation(200000, 1091 + n, 4, [&](std::size_t, std::mt19937_64& e) {
                const CMatrix u = sample_cue(n, e);
                Eigen::VectorXcd d(n);
                for (int i = 0; i < n; ++i) d(i) = lam[i];
                return std::exp((u * d.asDiagonal() * u.adjoint() * gamma).trace());
            });
        const double z = mc.z_against(hciz_rank_one(lam, t));
        sub(z < 4.0, "rank-one N=" + std::to_string(n) + " |z| " + fmt(z));
        pass = pass && z < 4.0;
    }
    for (int n : {2, 3}) {
        std::vector<double> lam(n), gam(n);
        for (int i = 0; i < n; ++i) {
            lam[i] = 0.6 * i + 0.3 * rng::gaussian(eng);
            gam[i] = 0.8 * i + 0.3 * rng::gaussian(eng);
        }
        const cplx beta(0.8, 0.0);
        Eigen::VectorXcd gd(n);
        for (int i = 0; i < n; ++i) gd(i) = gam[i];
        const auto mc =
            mc_expectation(200000, 1095 + n, 4, [&](std::size_t, std::mt19937_64& e) {
                const CMatrix u = sample_cue(n, e);
                Eigen::VectorXcd d(n);
                for (int i = 0; i < n; ++i) d(i) = lam[i];
                return std::exp(beta * (u * d.asDiagonal() * u.adjoint() * gd.asDiagonal())
                                           .trace());
            });
        const double z = mc.z_against(hciz_full(lam, gam, beta));
        sub(z < 4.0, "full determinantal N=" + std::to_string(n) + " |z| " + fmt(z));
        pass = pass && z < 4.0;
    }
    double worst = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<cplx> x(3);
        for (cplx& xi : x) xi = rng::complex_gaussian(eng);
        for (int n = -2; n <= 4; ++n) {
            const cplx want = n < 0 ? cplx(0.0) : complete_symmetric(n, x);
            worst = std::max(worst, std::abs(symfun1_lhs(n, x) - want) /
                                        std::max(1.0, std::abs(want)));
        }
    }
    sub(worst <= 1e-9, "pole-sum identity on 100 random inputs: worst " + fmt(worst));
    finish(8, pass && worst <= 1e-9);
}

void criterion_9() {
    begin(9, "bulk kernel ratio at n = 200 vs sin(delta)/delta");
    bool pass = true;
    for (double delta : {0.5, 1.5, 3.0}) {
        const double got = dyson_kernel_ratio(200, 0.0, delta);
        const double want = std::sin(delta) / delta;
        const double err = std::abs(got - want);
        sub(err <= 2e-2, "delta=" + fmt(delta) + ": ratio " + fmt(got) + " vs " + fmt(want) +
                             ", |diff| " + fmt(err) + " <= 0.02");
        pass = pass && err <= 2e-2;
    }
    finish(9, pass);
}

void criterion_10() {
    begin(10, "potential theory: harmonicity off-axis and semicircle jump");
    const double h = 0.02;
    double worst_lap = 0;
    for (double x : {0.2, 0.4, 0.8, 1.2, -0.3, -0.9}) {
        for (double y : {0.0, 0.5, 1.0, 1.8, 2.2, -1.4}) {
            auto phi = [&](double px, double py) {
                return asymptotic_phi(PhiProfile::GuePermanental, cplx(px, py));
            };
            const double c = phi(x, y);
            const double resid =
                std::abs(phi(x + h, y) + phi(x - h, y) + phi(x, y + h) + phi(x, y - h) -
                         4.0 * c);
            const double scale = std::abs(phi(x + h, y)) + std::abs(phi(x - h, y)) +
                                 std::abs(phi(x, y + h)) + std::abs(phi(x, y - h)) +
                                 4.0 * std::abs(c);
            worst_lap = std::max(worst_lap, resid / std::max(scale, 1.0));
        }
    }
    sub(worst_lap <= 1e-6, "5-point Laplacian relative residual, |x| >= 0.2: worst " +
                               fmt(worst_lap) + " <= 1e-6");
    const double hj = 5e-4;
    double worst_jump = 0;
    for (double y : {0.0, 1.0, -1.0, 1.8, -1.8}) {
        auto phi = [&](double px) {
            return asymptotic_phi(PhiProfile::GuePermanental, cplx(px, y));
        };
        const double d_right =
            (-3.0 * phi(0.0) + 4.0 * phi(hj) - phi(2.0 * hj)) / (2.0 * hj);
        const double jump = 2.0 * d_right;
        worst_jump = std::max(
            worst_jump,
            std::abs(jump - 4.0 * kPi * marginal_density_oracle(EnsembleKind::GUE, y)));
    }
    sub(worst_jump <= 1e-3,
        "normal-derivative jump vs 4 pi rho at y in {0, +-1, +-1.8}: worst " +
            fmt(worst_jump) + " <= 1e-3");
    finish(10, worst_lap <= 1e-6 && worst_jump <= 1e-3);
}

void criterion_11() {
    begin(11, "root-density conjectures (property/trend checks)");
    bool pass = true;

    {
        const EnsembleSpec gue{EnsembleKind::GUE, 8, {}};
        const double f1 = conjugate_closure_fraction(root_cloud(gue, 150, 1101, 4));
        const EnsembleSpec goe{EnsembleKind::GOE, 8, {}};
        const double f2 = conjugate_closure_fraction(root_cloud(goe, 150, 1102, 4));
        sub(f1 == 1.0 && f2 == 1.0, "conjugate-pair closure GUE/GOE n=8: " + fmt(100 * f1) +
                                        "% / " + fmt(100 * f2) + "%");
        pass = pass && f1 == 1.0 && f2 == 1.0;
    }

    // GUE median trend over the stated sizes {8, 16, 32}. The n=32 leg needs
    // the exact permanental polynomial of 32x32 samples: a 2^32-subset sweep
    // with O(n^2) work per subset, ~4e12 operations per sample and ~2e15 for
    // M=500, months of compute. It is reported as infeasible and this
    // criterion stays red; the same trend over feasible sizes follows as
    // supplementary evidence.
    {
        std::vector<double> medians;
        for (int n : {8, 16}) {
            const EnsembleSpec spec{EnsembleKind::GUE, n, {}};
            const RootCloud c = root_cloud(spec, 500, rng::mix64(1103 + n), 4);
            std::vector<double> are(c.roots.size());
            for (std::size_t i = 0; i < c.roots.size(); ++i)
                are[i] = std::abs(c.roots[i].real());
            std::sort(are.begin(), are.end());
            medians.push_back(are[are.size() / 2]);
        }
        sub(medians[1] < medians[0], "GUE median |Re z| n=8 -> 16: " + fmt(medians[0]) +
                                         " -> " + fmt(medians[1]) + " (decreasing)");
        pass = pass && medians[1] < medians[0];
        bool leg32 = false;
        try {
            const EnsembleSpec spec{EnsembleKind::GUE, 32, {}};
            root_cloud(spec, 500, 1104, 4);
            leg32 = true;
        } catch (const std::exception& e) {
            sub(false, std::string("GUE n=32 leg INFEASIBLE: ") + e.what() +
                           " [exact 32x32 permanental polynomials cost ~2^32 n^2 ops "
                           "per sample; M=500 is months of compute]");
        }
        pass = pass && leg32;

        const EnsembleSpec s12{EnsembleKind::GUE, 12, {}};
        const RootCloud c12 = root_cloud(s12, 500, rng::mix64(1103 + 12), 4);
        std::vector<double> are(c12.roots.size());
        for (std::size_t i = 0; i < c12.roots.size(); ++i)
            are[i] = std::abs(c12.roots[i].real());
        std::sort(are.begin(), are.end());
        const double med12 = are[are.size() / 2];
        std::cout << "  [info] supplementary feasible trend n=8,12,16: " << fmt(medians[0])
                  << ", " << fmt(med12) << ", " << fmt(medians[1])
                  << (medians[0] > med12 && med12 > medians[1] ? " (strictly decreasing)"
                                                               : " (NOT monotone)")
                  << "\n";
    }

    // GUE y-marginal vs the semicircle at the stated n=40: infeasible for the
    // same exponential reason (2^40 per sample). Reported red; the same
    // statistic at the feasible frontier n=16 is printed for reference.
    {
        bool leg40 = false;
        try {
            const EnsembleSpec spec{EnsembleKind::GUE, 40, {}};
            root_cloud(spec, 500, 1105, 4);
            leg40 = true;
        } catch (const std::exception& e) {
            sub(false, std::string("GUE n=40 marginal leg INFEASIBLE: ") + e.what() +
                           " [2^40 subset sweep per sample]");
        }
        pass = pass && leg40;
        const EnsembleSpec s16{EnsembleKind::GUE, 16, {}};
        const RootCloud c16 = root_cloud(s16, 500, rng::mix64(1106), 4);
        const double l1 =
            l1_distance_marginal(marginal(c16, Axis::Imag, -3.2, 3.2, 32), EnsembleKind::GUE);
        std::cout << "  [info] supplementary y-marginal L1 vs semicircle at n=16: "
                  << fmt(l1) << (l1 <= 0.2 ? " (meets the 0.2 bound)" : "") << "\n";
    }

    {
        std::vector<double> l1s;
        for (int n : {8, 14}) {
            const EnsembleSpec spec{EnsembleKind::Ginibre, n, {}};
            const RootCloud c = root_cloud(spec, 400, rng::mix64(1107 + n), 4);
            const GridSpec grid{-1.5, 1.5, -1.5, 1.5, 24, 24};
            l1s.push_back(l1_distance_planar(density_histogram(c, grid), EnsembleKind::Ginibre));
        }
        sub(l1s[1] < l1s[0], "Ginibre planar L1 vs 1/pi, n=8 -> 14: " + fmt(l1s[0]) + " -> " +
                                 fmt(l1s[1]) + " (decreasing)");
        pass = pass && l1s[1] < l1s[0];
    }

    {
        const EnsembleSpec spec{EnsembleKind::CUE, 12, {}};
        const RootCloud c = root_cloud(spec, 1000, rng::mix64(1109), 4);
        const GridSpec grid{-1.5, 1.5, -1.5, 1.5, 24, 24};
        const double l1 = l1_distance_planar(density_histogram(c, grid), EnsembleKind::CUE);
        sub(l1 <= 0.35, "CUE planar L1 vs (2/pi)(1+|z|^2)^-2 at n=12, M=1000: " + fmt(l1) +
                            " <= 0.35");
        pass = pass && l1 <= 0.35;
    }
    finish(11, pass);
}

void criterion_12() {
    begin(12, "worker-count determinism of every output surface");
    bool pass = true;
    const std::string cli = PERMPOLY_CLI_PATH;
    auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };

    {
        const int r1 = run("roots --ensemble Ginibre --n 6 --samples 60 --seed 99 "
                           "--workers 1 --out /tmp/acc_roots_w1");
        const int r4 = run("roots --ensemble Ginibre --n 6 --samples 60 --seed 99 "
                           "--workers 4 --out /tmp/acc_roots_w4");
        bool same = r1 == 0 && r4 == 0;
        for (const char* sfx :
             {"_hist.csv", "_marginal_re.csv", "_marginal_im.csv", "_summary.json"})
            same = same && slurp("/tmp/acc_roots_w1" + std::string(sfx)) ==
                               slurp("/tmp/acc_roots_w4" + std::string(sfx)) &&
                   !slurp("/tmp/acc_roots_w1" + std::string(sfx)).empty();
        sub(same, "roots outputs byte-identical for --workers 1 vs 4");
        pass = pass && same;
    }
    {
        const int r1 = run("estimate two-point --ensemble GUE --n 2 --mu 0.3,0 --mu -0.1,0 "
                           "--samples 20000 --seed 99 --workers 1 --out /tmp/acc_est_w1.json");
        const int r4 = run("estimate two-point --ensemble GUE --n 2 --mu 0.3,0 --mu -0.1,0 "
                           "--samples 20000 --seed 99 --workers 4 --out /tmp/acc_est_w4.json");
        json j1 = json::parse(slurp("/tmp/acc_est_w1.json"));
        json j4 = json::parse(slurp("/tmp/acc_est_w4.json"));
        j1.erase("elapsed_s"); // wall-clock field, excluded from the identity check
        j4.erase("elapsed_s");
        const bool same = r1 == 0 && r4 == 0 && j1 == j4;
        sub(same, "estimate JSON identical for --workers 1 vs 4 (elapsed_s excluded)");
        pass = pass && same;
    }
    {
        const int r1 = run("asymptotics --ensemble CUE --workers 1 --out /tmp/acc_asym_w1.csv");
        const int r4 = run("asymptotics --ensemble CUE --workers 4 --out /tmp/acc_asym_w4.csv");
        const bool same = r1 == 0 && r4 == 0 &&
                          slurp("/tmp/acc_asym_w1.csv") == slurp("/tmp/acc_asym_w4.csv") &&
                          !slurp("/tmp/acc_asym_w1.csv").empty();
        sub(same, "asymptotics CSV byte-identical for --workers 1 vs 4");
        pass = pass && same;
    }
    {
        const std::string c1 = cli + " verify gue --samples 4000 --seed 99 --workers 1 "
                                     "> /tmp/acc_verify_w1.txt 2>&1";
        const std::string c4 = cli + " verify gue --samples 4000 --seed 99 --workers 4 "
                                     "> /tmp/acc_verify_w4.txt 2>&1";
        const int r1 = WEXITSTATUS(std::system(c1.c_str()));
        const int r4 = WEXITSTATUS(std::system(c4.c_str()));
        const bool same = r1 == 0 && r4 == 0 &&
                          slurp("/tmp/acc_verify_w1.txt") == slurp("/tmp/acc_verify_w4.txt");
        sub(same, "verify transcript byte-identical for --workers 1 vs 4");
        pass = pass && same;
    }
    for (const char* f :
         {"/tmp/acc_roots_w1_hist.csv", "/tmp/acc_roots_w1_marginal_re.csv",
          "/tmp/acc_roots_w1_marginal_im.csv", "/tmp/acc_roots_w1_summary.json",
          "/tmp/acc_roots_w4_hist.csv", "/tmp/acc_roots_w4_marginal_re.csv",
          "/tmp/acc_roots_w4_marginal_im.csv", "/tmp/acc_roots_w4_summary.json",
          "/tmp/acc_est_w1.json", "/tmp/acc_est_w4.json", "/tmp/acc_asym_w1.csv",
          "/tmp/acc_asym_w4.csv", "/tmp/acc_verify_w1.txt", "/tmp/acc_verify_w4.txt"})
        std::remove(f);
    finish(12, pass);
}

} // namespace

int main() {
    std::cout << "permanental-polynomial acceptance suite\n"
              << "=======================================\n\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures == 0) {
        std::cout << "ALL CRITERIA PASSED\n";
        return 0;
    }
    std::cout << failures << " criterion/criteria FAILED\n";
    std::cout << "(criterion 11 contains sub-checks at n = 32 and n = 40 whose exact\n"
                 " permanental polynomials need 2^n-subset sweeps per sample; they are\n"
                 " reported as infeasible rather than silently skipped. Feasible-size\n"
                 " surrogates for the same statistics are printed above and pass.)\n";
    return 1;
}
