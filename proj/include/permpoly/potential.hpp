#pragma once

#include <stdexcept>
#include <vector>

namespace permpoly {

/// Confining potential V(x) for the weight e^{-N V(x)} dx: polynomial of
/// even degree with positive leading coefficient, so the weight integrates.
struct Potential {
    std::vector<double> coeffs; // ascending, V(x) = sum coeffs[k] x^k

    Potential() = default;
    explicit Potential(std::vector<double> c) : coeffs(std::move(c)) { validate(); }

    static Potential gaussian() { return Potential({0.0, 0.0, 0.5}); } // x^2/2

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    bool is_even() const {
        for (std::size_t k = 1; k < coeffs.size(); k += 2)
            if (coeffs[k] != 0.0) return false;
        return true;
    }

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    void validate() const {
        if (coeffs.size() < 3 || coeffs.back() == 0.0)
            throw std::invalid_argument("Potential: degree must be at least 2");
        if (degree() % 2 != 0)
            throw std::invalid_argument("Potential: degree must be even");
        if (coeffs.back() <= 0.0)
            throw std::invalid_argument("Potential: leading coefficient must be positive");
    }
};

} // namespace permpoly
