#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "shockbayes/dataset.hpp"
#include "shockbayes/regression.hpp"
#include "shockbayes/rng.hpp"

namespace shockbayes {

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
};

// Three-dimensional evaluation grid for the degree-1 posterior: intercept,
// slope, and sigma^2 (the sigma^2 axis is log-spaced).
struct GridSpec {
    GridAxis c0;
    GridAxis s;
    GridAxis sigma2;
};

// Grid spanning +-width_sds closed-form sds around the fit and
// [s^2/sigma2_lo_div, sigma2_hi_mult * s^2] in sigma^2.
GridSpec default_grid(const FitResult& fit, std::size_t points_per_axis = 101,
                      double width_sds = 8.0, double sigma2_lo_div = 30.0,
                      double sigma2_hi_mult = 60.0);

struct OracleMarginal {
    double grid_mean = 0.0;
    double grid_sd = 0.0;
    double closed_mean = 0.0;
    double closed_sd = 0.0;   // NaN where the closed-form moment is undefined
};

struct OracleReport {
    OracleMarginal c0, s, sigma2;
    double boundary_mass = 0.0;
};

// Direct grid evaluation of likelihood x (1/sigma^2) prior, normalized by the
// grid sum; marginal moments by summation. Independent of the closed-form
// path except for the reported closed-form reference values.
OracleReport grid_posterior_oracle(const ShockDataset& ds, const GridSpec& grid);

struct PPCResult {
    std::vector<double> up;                   // per data point
    std::vector<double> actual;               // observed us
    std::vector<std::vector<double>> simulated;  // one vector per replicate
    std::uint64_t seed = 0;
};

// One simulated dataset from fixed parameters (building block for the check).
std::vector<double> ppc_replicate(const ShockDataset& ds, const Vec& beta,
                                  double sigma2, RngState& rng);

PPCResult posterior_predictive_check(const PosteriorNIG& post, const ShockDataset& ds,
                                     std::size_t replicates, const RngState& rng);

struct CoverageResult {
    std::vector<double> per_coefficient;
    double region = 0.0;  // elliptical region coverage (degree 1)
    std::size_t reps = 0;
};

CoverageResult coverage_experiment(const Vec& true_beta, double true_sigma2,
                                   const std::vector<double>& up_design,
                                   double level, std::size_t reps,
                                   const RngState& rng);

}  // namespace shockbayes
