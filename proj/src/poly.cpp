#include "permpoly/poly.hpp"

#include <algorithm>
#include <cmath>

namespace permpoly {

bool Poly::is_zero() const {
    for (const cplx& c : coeffs)
        if (c != cplx(0.0)) return false;
    return true;
}

cplx Poly::eval(cplx mu) const {
    cplx acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * mu + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs.size() <= 1) return Poly{{cplx(0.0)}};
    std::vector<cplx> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
    return Poly(std::move(d));
}

void Poly::trim(double tol) {
    double scale = 0.0;
    for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= tol * scale) coeffs.pop_back();
}

Poly Poly::from_roots(std::span<const cplx> roots) {
    std::vector<cplx> c{cplx(1.0)};
    for (const cplx& r : roots) {
        c.push_back(cplx(0.0));
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Poly(std::move(c));
}

} // namespace permpoly
