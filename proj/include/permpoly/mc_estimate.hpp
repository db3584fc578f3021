#pragma once

#include <cstdint>
#include <limits>

#include "permpoly/types.hpp"

namespace permpoly {

/// Mean and standard error of a Monte-Carlo average. For complex-valued
/// samples the reported stderr combines both components,
/// sqrt((var_re + var_im)/M), so |mean - oracle|/stderr is a z-score.
struct MCEstimate {
    cplx mean{0.0};
    double stderr_{0.0};
    std::size_t n_samples{0};
    std::uint64_t seed{0};

    double z_against(cplx oracle) const {
        const double dist = std::abs(mean - oracle);
        if (stderr_ > 0.0) return dist / stderr_;
        return dist == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    double rel_stderr() const {
        const double m = std::abs(mean);
        return m > 0.0 ? stderr_ / m : std::numeric_limits<double>::infinity();
    }
};

} // namespace permpoly
