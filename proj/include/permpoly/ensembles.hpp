#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "permpoly/potential.hpp"
#include "permpoly/types.hpp"

namespace permpoly {

enum class EnsembleKind { GUE, GOE, CUE, Ginibre, UnitaryInvariant };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_from_string(const std::string& name);

struct EnsembleSpec {
    EnsembleKind kind{EnsembleKind::GUE};
    int n{1};
    std::optional<Potential> potential; // UnitaryInvariant only

    void validate() const;
};

// Entry-scale conventions, read off the weights the closed forms assume:
// GUE      e^{-(N/2) H_ii^2}, e^{-N |H_ij|^2}   -> Var H_ii = 1/N, E|H_ij|^2 = 1/N
// GOE      e^{-(N/2) H_ii^2}, e^{-N H_ij^2}     -> Var H_ii = 1/N, Var H_ij = 1/(2N)
// Ginibre  e^{-N |Z_ij|^2}                      -> E|Z_ij|^2 = 1/N
CMatrix sample_gue(int n, std::mt19937_64& eng);
CMatrix sample_goe(int n, std::mt19937_64& eng);

/// Haar unitary: QR of a Ginibre draw with the R-diagonal phases divided out.
CMatrix sample_cue(int n, std::mt19937_64& eng);

CMatrix sample_ginibre(int n, std::mt19937_64& eng);

struct MetropolisParams {
    int burn_in_sweeps = 3000;
    int thin_sweeps = 10;
    double step = 0.0; // 0 picks 0.6 / sqrt(n)
};

struct EigenvalueSample {
    std::vector<double> lambdas;
    double acceptance_rate;
};

/// Metropolis draw from the eigenvalue density with squared-Vandermonde
/// repulsion and weight e^{-N V}; desk-scale sizes only (n <= 8).
EigenvalueSample sample_unitary_invariant(const Potential& v, int n, std::mt19937_64& eng,
                                          const MetropolisParams& params = {});

/// Eigenvalues plus an independent Haar frame, for permanent Monte Carlo
/// over a general unitary-invariant ensemble.
CMatrix compose_unitary_invariant_matrix(const std::vector<double>& lambdas,
                                         std::mt19937_64& eng);

/// Dispatch on EnsembleSpec.
CMatrix sample_matrix(const EnsembleSpec& spec, std::mt19937_64& eng);

} // namespace permpoly
