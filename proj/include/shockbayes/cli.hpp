#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shockbayes/regression.hpp"

namespace shockbayes {

struct RunConfig {
    std::string data_path;
    std::string material;  // defaults to the data file stem
    int degree = 1;
    std::uint64_t seed = 0;
    std::size_t samples = 100000;
    std::size_t resamples = 100000;
    double level = 0.95;
    std::optional<double> rho0;
    double p0 = 1e-4;
    std::optional<double> e0;
    std::size_t up_grid_size = 200;
    std::size_t v_grid_size = 200;
    std::optional<std::string> prior_path;  // JSON {beta0, sigma0, a0, b0}
    std::string out_dir = "shockbayes_out";
    std::string format = "csv";  // csv | json
    bool dedupe = false;
    bool drop_max_up = false;
    bool emit_svg = false;
    bool parametric_bootstrap = false;

    void validate() const;
};

// Merge keys from a flat JSON config file; CLI flags take precedence, so this
// runs before flag overrides are applied.
void apply_config_file(RunConfig& cfg, const std::string& path);

NIGPrior load_prior(const std::string& path, int degree);

// Execute one subcommand; writes report files into cfg.out_dir and the run
// manifest. Returns the process exit status (0 on success).
int run(const std::string& subcommand, const RunConfig& cfg);

// All valid subcommands, in help order.
const std::vector<std::string>& subcommands();

}  // namespace shockbayes
