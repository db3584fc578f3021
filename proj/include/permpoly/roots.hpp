#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permpoly/ensembles.hpp"
#include "permpoly/poly.hpp"
#include "permpoly/types.hpp"

namespace permpoly {

/// All roots of a monic polynomial: companion-matrix eigenvalues polished by
/// Newton steps. Throws if any polished root fails the residual test
/// |p(r)/p'(r)| <= 1e-8 max(1, |r|).
std::vector<cplx> poly_roots(const Poly& p);

/// Permanental roots of M ensemble draws, n roots per sample in order.
struct RootCloud {
    EnsembleSpec spec;
    std::uint64_t seed{0};
    std::size_t samples{0};
    std::vector<cplx> roots; // sample i occupies [i*n, (i+1)*n)

    std::span<const cplx> sample(std::size_t i) const {
        return std::span<const cplx>(roots).subspan(i * spec.n, spec.n);
    }
};

RootCloud root_cloud(const EnsembleSpec& spec, std::size_t samples, std::uint64_t seed,
                     int workers = 1);

/// Fraction of samples whose root multiset is closed under conjugation
/// (greedy nearest-pair matching, tolerance scaled by root magnitude).
double conjugate_closure_fraction(const RootCloud& cloud, double tol = 1e-8);

struct GridSpec {
    double x_min, x_max, y_min, y_max;
    int nx, ny;
    double cell_area() const {
        return (x_max - x_min) / nx * ((y_max - y_min) / ny);
    }
};

/// 2-D complex-plane histogram; density = count / (inside_total * cell area)
/// so the in-grid density integrates to one.
struct DensityHistogram {
    GridSpec grid;
    std::vector<std::size_t> counts; // row-major, iy * nx + ix
    std::vector<double> density;
    std::size_t inside{0};
    std::size_t outside{0};
};

DensityHistogram density_histogram(const RootCloud& cloud, const GridSpec& grid);
DensityHistogram density_histogram(std::span<const cplx> points, const GridSpec& grid);

struct Histogram1D {
    double lo, hi;
    std::vector<std::size_t> counts;
    std::vector<double> density;
    std::size_t inside{0};
    std::size_t outside{0};
    double bin_width() const { return (hi - lo) / counts.size(); }
};

enum class Axis { Real, Imag };
Histogram1D marginal(const RootCloud& cloud, Axis axis, double lo, double hi, int bins);

/// L1 distance between the histogram and the conjectured planar profile,
/// with the oracle cell-averaged on a sub-grid so boundary cells compare
/// fairly.
double l1_distance_planar(const DensityHistogram& h, EnsembleKind kind, int subsamples = 4);
double l1_distance_marginal(const Histogram1D& h, EnsembleKind kind, int subsamples = 8);

struct ConjectureEntry {
    int n{0};
    double median_abs_re{0.0};      // GUE/GOE concentration measure
    double l1_marginal{-1.0};       // GUE/GOE vs semicircle (y marginal)
    double l1_planar{-1.0};         // CUE/Ginibre vs planar profile
    double edge_estimate{0.0};      // 97.5th percentile of |Im z|
    double closure_fraction{-1.0};  // GUE/GOE only
};

struct ConjectureReport {
    EnsembleKind kind{EnsembleKind::GUE};
    std::size_t samples{0};
    std::uint64_t seed{0};
    std::vector<ConjectureEntry> entries;
    bool median_strictly_decreasing{false};
    bool l1_strictly_decreasing{false};
};

/// Trend data across sizes for the asymptotic root-density conjectures.
/// Emits measurements and monotonicity verdicts, never hard thresholds:
/// the limiting profiles are asymptotic statements.
ConjectureReport conjecture_report(const EnsembleSpec& base, std::span<const int> sizes,
                                   std::size_t samples, std::uint64_t seed, int workers = 1);

} // namespace permpoly
