#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permpoly/cli.hpp"

using permpoly::cli::RunConfig;

namespace {

// --mu accepts "re,im" (repeatable).
std::vector<permpoly::cplx> parse_mu(const std::vector<std::string>& raw) {
    std::vector<permpoly::cplx> mu;
    for (const std::string& s : raw) {
        const auto comma = s.find(',');
        try {
            if (comma == std::string::npos) {
                mu.emplace_back(std::stod(s), 0.0);
            } else {
                mu.emplace_back(std::stod(s.substr(0, comma)),
                                std::stod(s.substr(comma + 1)));
            }
        } catch (const std::exception&) {
            throw permpoly::cli::ConfigError("bad --mu value: " + s);
        }
    }
    return mu;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"permanental polynomials of random matrices: verification suites, "
                 "Monte-Carlo estimators and root-density pipelines"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string ensemble_name = "GUE";
    std::vector<std::string> mu_raw;
    std::vector<double> potential_coeffs;
    std::string config_path;
    bool seed_given = false;
    std::uint64_t seed_flag = 0;
    int grid_res = 0;
    double window = 0.0;
    int dim = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--ensemble", ensemble_name, "GUE|GOE|CUE|Ginibre|UnitaryInvariant");
        cmd->add_option("--n", dim, "matrix dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--N", cfg.big_n, "second order for the duality suite")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--potential", potential_coeffs,
                        "ascending V(x) coefficients (UnitaryInvariant)");
        cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
        cmd->add_option("--seed", seed_flag, "RNG seed")
            ->each([&](const std::string&) { seed_given = true; });
        cmd->add_option("--mu", mu_raw, "complex point re,im (repeatable)");
        cmd->add_option("--out", cfg.out, "output path or prefix");
        cmd->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--grid", grid_res, "grid resolution per axis")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--window", window, "half-width of the square grid window")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--bins", cfg.marginal_bins, "marginal histogram bins");
        cmd->add_option("--sizes", cfg.sizes, "dimension list for trend reports");
    };

    CLI::App* verify = app.add_subcommand("verify", "run an oracle-vs-MC suite");
    verify->add_option("suite", cfg.suite,
                       "exact|gue|goe|cue|ginibre|group-integrals|duality|all");
    add_common(verify);

    CLI::App* estimate = app.add_subcommand("estimate", "Monte-Carlo estimate with oracle");
    estimate->add_option("quantity", cfg.quantity, "mean-poly|two-point")->required();
    add_common(estimate);

    CLI::App* roots = app.add_subcommand("roots", "root clouds, histograms, trend report");
    add_common(roots);

    CLI::App* asym = app.add_subcommand("asymptotics", "limiting surfaces on a grid");
    asym->add_flag("--characteristic", cfg.characteristic,
                   "CUE characteristic-polynomial profile");
    add_common(asym);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : permpoly::cli::kExitUsage;
    }

    try {
        if (!config_path.empty()) permpoly::cli::apply_json_config(cfg, config_path);
        cfg.ensemble.kind = permpoly::ensemble_from_string(ensemble_name);
        if (dim > 0) {
            cfg.ensemble.n = dim;
            cfg.n_set = true;
        }
        if (!potential_coeffs.empty()) cfg.ensemble.potential = permpoly::Potential(potential_coeffs);
        if (!mu_raw.empty()) cfg.mu = parse_mu(mu_raw);
        if (grid_res > 0) {
            cfg.grid.nx = grid_res;
            cfg.grid.ny = grid_res;
        }
        if (window > 0.0) {
            cfg.grid.x_min = -window;
            cfg.grid.x_max = window;
            cfg.grid.y_min = -window;
            cfg.grid.y_max = window;
        }
        cfg.seed = seed_given ? seed_flag : permpoly::cli::seed_from_env_or(cfg.seed);

        if (verify->parsed()) return permpoly::cli::run_verify(cfg, std::cout);
        if (estimate->parsed()) return permpoly::cli::run_estimate(cfg, std::cout);
        if (roots->parsed()) return permpoly::cli::run_roots(cfg, std::cout);
        if (asym->parsed()) return permpoly::cli::run_asymptotics(cfg, std::cout);
        return permpoly::cli::kExitUsage;
    } catch (const permpoly::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return permpoly::cli::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return permpoly::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return permpoly::cli::kExitCheckFailed;
    }
}
