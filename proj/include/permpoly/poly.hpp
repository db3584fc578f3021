#pragma once

#include <span>
#include <vector>

#include "permpoly/types.hpp"

namespace permpoly {

/// Dense polynomial with complex coefficients, ascending degree.
struct Poly {
    std::vector<cplx> coeffs; // coeffs[k] multiplies mu^k

    Poly() = default;
    explicit Poly(std::vector<cplx> c) : coeffs(std::move(c)) {}

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const;

    cplx eval(cplx mu) const; // Horner
    Poly derivative() const;

    // Drops trailing coefficients below `tol` relative to the largest one.
    void trim(double tol = 0.0);

    static Poly from_roots(std::span<const cplx> roots); // monic
};

} // namespace permpoly
