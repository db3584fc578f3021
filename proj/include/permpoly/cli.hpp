#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "permpoly/ensembles.hpp"
#include "permpoly/roots.hpp"
#include "permpoly/types.hpp"

namespace permpoly::cli {

// Exit codes: 0 success, 1 check failure, 2 usage/config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Raised for malformed configuration; main maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;          // verify | estimate | roots | asymptotics
    std::string suite = "all";    // verify target
    std::string quantity;         // estimate: mean-poly | two-point
    EnsembleSpec ensemble{EnsembleKind::GUE, 2, {}};
    bool n_set = false;
    int big_n = 3; // second order for the duality suite (--N)
    std::vector<cplx> mu;
    std::size_t samples = 0;      // 0 -> per-command default
    std::uint64_t seed = 20060615;
    std::string out;
    std::string format = "csv";   // csv | json
    int workers = 4;
    GridSpec grid{-1.5, 1.5, -1.5, 1.5, 24, 24};
    int marginal_bins = 32;
    std::vector<int> sizes;       // conjecture-report sizes; empty -> {n}
    bool characteristic = false;  // asymptotics: CUE characteristic profile
};

/// Merge a JSON config file into cfg; unknown keys are rejected.
void apply_json_config(RunConfig& cfg, const std::string& path);

/// Seed fallback: PERMPOLY_SEED when the flag was not given.
std::uint64_t seed_from_env_or(std::uint64_t fallback);

int run_verify(const RunConfig& cfg, std::ostream& out);
int run_estimate(const RunConfig& cfg, std::ostream& out);
int run_roots(const RunConfig& cfg, std::ostream& out);
int run_asymptotics(const RunConfig& cfg, std::ostream& out);

} // namespace permpoly::cli
