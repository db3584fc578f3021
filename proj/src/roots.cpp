#include "permpoly/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "permpoly/closed_forms.hpp"
#include "permpoly/parallel.hpp"
#include "permpoly/perm.hpp"
#include "permpoly/rng.hpp"

namespace permpoly {

std::vector<cplx> poly_roots(const Poly& p) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
    const cplx lead = p.coeffs.back();
    if (lead == cplx(0.0)) throw std::invalid_argument("poly_roots: zero leading coefficient");

    CMatrix companion = CMatrix::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = cplx(1.0);
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.coeffs[i] / lead;
    Eigen::ComplexEigenSolver<CMatrix> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("poly_roots: companion eigensolver failed");

    const Poly dp = p.derivative();
    double coeff_scale = 0.0;
    for (const cplx& c : p.coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));

    std::vector<cplx> roots(d);
    std::vector<double> residuals;
    for (int i = 0; i < d; ++i) {
        cplx r = es.eigenvalues()(i);
        double step = 0.0;
        for (int it = 0; it < 12; ++it) {
            const cplx pv = p.eval(r);
            const cplx dv = dp.eval(r);
            if (std::abs(dv) == 0.0) break;
            const cplx delta = pv / dv;
            step = std::abs(delta);
            if (!(step < 1.0 + std::abs(r))) break; // diverging step: keep eigenvalue
            r -= delta;
            if (step <= 1e-14 * std::max(1.0, std::abs(r))) break;
        }
        const cplx pv = p.eval(r);
        const cplx dv = dp.eval(r);
        const double tol = 1e-8 * std::max(1.0, std::abs(r));
        const bool ok_newton = std::abs(dv) > 0.0 && std::abs(pv / dv) <= tol;
        // Clustered roots flatten p'; fall back to the coefficient scale.
        const double mag_pow = std::pow(std::max(1.0, std::abs(r)), d);
        const bool ok_residual = std::abs(pv) <= 1e-8 * coeff_scale * mag_pow * d;
        if (!ok_newton && !ok_residual) residuals.push_back(std::abs(pv));
        roots[i] = r;
    }
    if (!residuals.empty()) {
        std::ostringstream msg;
        msg << "poly_roots: " << residuals.size() << " root(s) failed the residual test;"
            << " worst |p(r)| = " << *std::max_element(residuals.begin(), residuals.end());
        throw std::runtime_error(msg.str());
    }
    return roots;
}

RootCloud root_cloud(const EnsembleSpec& spec, std::size_t samples, std::uint64_t seed,
                     int workers) {
    spec.validate();
    if (samples < 1) throw std::invalid_argument("root_cloud: need at least one sample");
    if (spec.n > 24)
        throw std::invalid_argument(
            "root_cloud: exact permanental polynomials are limited to n <= 24 "
            "(the coefficient sweep visits 2^n subsets per sample)");
    RootCloud cloud;
    cloud.spec = spec;
    cloud.seed = seed;
    cloud.samples = samples;
    cloud.roots.resize(samples * static_cast<std::size_t>(spec.n));
    parallel_for(samples, workers, [&](std::size_t i) {
        auto eng = rng::substream(seed, i);
        const std::vector<cplx> r = poly_roots(perm_poly(sample_matrix(spec, eng)));
        std::copy(r.begin(), r.end(), cloud.roots.begin() + i * spec.n);
    });
    return cloud;
}

double conjugate_closure_fraction(const RootCloud& cloud, double tol) {
    std::size_t closed = 0;
    for (std::size_t s = 0; s < cloud.samples; ++s) {
        std::vector<cplx> rem(cloud.sample(s).begin(), cloud.sample(s).end());
        bool ok = true;
        while (!rem.empty()) {
            const cplx r = rem.back();
            rem.pop_back();
            const double scale = tol * std::max(1.0, std::abs(r));
            if (std::abs(r.imag()) <= scale) continue; // effectively real
            std::size_t best = rem.size();
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < rem.size(); ++j) {
                const double d = std::abs(rem[j] - std::conj(r));
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            if (best == rem.size() || best_d > scale) {
                ok = false;
                break;
            }
            rem.erase(rem.begin() + best);
        }
        if (ok) ++closed;
    }
    return cloud.samples ? double(closed) / double(cloud.samples) : 0.0;
}

DensityHistogram density_histogram(std::span<const cplx> points, const GridSpec& grid) {
    if (points.empty()) throw std::invalid_argument("density_histogram: empty point set");
    if (grid.nx < 1 || grid.ny < 1 || grid.x_max <= grid.x_min || grid.y_max <= grid.y_min)
        throw std::invalid_argument("density_histogram: malformed grid");
    DensityHistogram h;
    h.grid = grid;
    h.counts.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0);
    const double dx = (grid.x_max - grid.x_min) / grid.nx;
    const double dy = (grid.y_max - grid.y_min) / grid.ny;
    for (const cplx& z : points) {
        const int ix = static_cast<int>(std::floor((z.real() - grid.x_min) / dx));
        const int iy = static_cast<int>(std::floor((z.imag() - grid.y_min) / dy));
        if (ix < 0 || ix >= grid.nx || iy < 0 || iy >= grid.ny) {
            ++h.outside;
            continue;
        }
        ++h.counts[static_cast<std::size_t>(iy) * grid.nx + ix];
        ++h.inside;
    }
    if (h.inside == 0) throw std::invalid_argument("density_histogram: no points inside grid");
    h.density.resize(h.counts.size());
    const double norm = double(h.inside) * grid.cell_area();
    for (std::size_t i = 0; i < h.counts.size(); ++i) h.density[i] = h.counts[i] / norm;
    return h;
}

DensityHistogram density_histogram(const RootCloud& cloud, const GridSpec& grid) {
    return density_histogram(std::span<const cplx>(cloud.roots), grid);
}

Histogram1D marginal(const RootCloud& cloud, Axis axis, double lo, double hi, int bins) {
    if (cloud.roots.empty()) throw std::invalid_argument("marginal: empty cloud");
    if (bins < 1 || hi <= lo) throw std::invalid_argument("marginal: malformed range");
    Histogram1D h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    const double w = (hi - lo) / bins;
    for (const cplx& z : cloud.roots) {
        const double c = axis == Axis::Real ? z.real() : z.imag();
        const int i = static_cast<int>(std::floor((c - lo) / w));
        if (i < 0 || i >= bins) {
            ++h.outside;
            continue;
        }
        ++h.counts[i];
        ++h.inside;
    }
    if (h.inside == 0) throw std::invalid_argument("marginal: no points inside range");
    h.density.resize(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        h.density[i] = h.counts[i] / (double(h.inside) * w);
    return h;
}

double l1_distance_planar(const DensityHistogram& h, EnsembleKind kind, int subsamples) {
    const double dx = (h.grid.x_max - h.grid.x_min) / h.grid.nx;
    const double dy = (h.grid.y_max - h.grid.y_min) / h.grid.ny;
    double acc = 0.0;
    for (int iy = 0; iy < h.grid.ny; ++iy) {
        for (int ix = 0; ix < h.grid.nx; ++ix) {
            double oracle = 0.0;
            for (int sy = 0; sy < subsamples; ++sy)
                for (int sx = 0; sx < subsamples; ++sx) {
                    const double x = h.grid.x_min + dx * (ix + (sx + 0.5) / subsamples);
                    const double y = h.grid.y_min + dy * (iy + (sy + 0.5) / subsamples);
                    oracle += planar_density_oracle(kind, cplx(x, y));
                }
            oracle /= double(subsamples) * subsamples;
            acc += std::abs(h.density[static_cast<std::size_t>(iy) * h.grid.nx + ix] - oracle) *
                   dx * dy;
        }
    }
    return acc;
}

double l1_distance_marginal(const Histogram1D& h, EnsembleKind kind, int subsamples) {
    const double w = h.bin_width();
    double acc = 0.0;
    for (std::size_t i = 0; i < h.density.size(); ++i) {
        double oracle = 0.0;
        for (int s = 0; s < subsamples; ++s)
            oracle += marginal_density_oracle(kind, h.lo + w * (i + (s + 0.5) / subsamples));
        oracle /= subsamples;
        acc += std::abs(h.density[i] - oracle) * w;
    }
    return acc;
}

ConjectureReport conjecture_report(const EnsembleSpec& base, std::span<const int> sizes,
                                   std::size_t samples, std::uint64_t seed, int workers) {
    base.validate();
    ConjectureReport report;
    report.kind = base.kind;
    report.samples = samples;
    report.seed = seed;
    const bool hermitian = base.kind == EnsembleKind::GUE || base.kind == EnsembleKind::GOE;
    for (int n : sizes) {
        EnsembleSpec spec = base;
        spec.n = n;
        const RootCloud cloud = root_cloud(spec, samples, rng::mix64(seed + n), workers);
        ConjectureEntry e;
        e.n = n;
        std::vector<double> abs_re(cloud.roots.size()), abs_im(cloud.roots.size());
        for (std::size_t i = 0; i < cloud.roots.size(); ++i) {
            abs_re[i] = std::abs(cloud.roots[i].real());
            abs_im[i] = std::abs(cloud.roots[i].imag());
        }
        std::sort(abs_re.begin(), abs_re.end());
        std::sort(abs_im.begin(), abs_im.end());
        e.median_abs_re = abs_re[abs_re.size() / 2];
        e.edge_estimate = abs_im[static_cast<std::size_t>(0.975 * (abs_im.size() - 1))];
        if (hermitian) {
            e.closure_fraction = conjugate_closure_fraction(cloud);
            const double half = base.kind == EnsembleKind::GUE ? 3.2 : 4.0;
            e.l1_marginal = l1_distance_marginal(marginal(cloud, Axis::Imag, -half, half, 32),
                                                 base.kind);
        } else {
            const GridSpec grid{-1.5, 1.5, -1.5, 1.5, 24, 24};
            e.l1_planar = l1_distance_planar(density_histogram(cloud, grid), base.kind);
        }
        report.entries.push_back(e);
    }
    auto strictly_decreasing = [](auto get, const std::vector<ConjectureEntry>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(get(v[i]) < get(v[i - 1]))) return false;
        return v.size() >= 2;
    };
    report.median_strictly_decreasing =
        strictly_decreasing([](const ConjectureEntry& e) { return e.median_abs_re; },
                            report.entries);
    report.l1_strictly_decreasing = strictly_decreasing(
        [](const ConjectureEntry& e) {
            return e.l1_marginal >= 0.0 ? e.l1_marginal : e.l1_planar;
        },
        report.entries);
    return report;
}

} // namespace permpoly
