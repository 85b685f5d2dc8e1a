#pragma once

#include <cstdint>
#include <vector>

#include "shockbayes/dataset.hpp"
#include "shockbayes/regression.hpp"
#include "shockbayes/rng.hpp"

namespace shockbayes {

// B resample-and-refit coefficient estimates, row-major B x (degree+1).
struct BootstrapEnsemble {
    std::vector<double> estimates;
    std::uint64_t seed = 0;
    std::size_t B = 0;
    int degree = 1;
    std::size_t redraws = 0;  // rank-deficient resamples that were re-drawn

    double at(std::size_t row, std::size_t coef) const {
        return estimates[row * static_cast<std::size_t>(degree + 1) + coef];
    }
};

// n i.i.d. uniform indices in [0, n), with replacement.
std::vector<std::size_t> resample_indices(RngState& rng, std::size_t n);

// Non-parametric pairs bootstrap. Rank-deficient resamples are re-drawn from
// a fresh substream and counted; more than 1% of B raises ExcessiveRedraws.
BootstrapEnsemble bootstrap_ensemble(const ShockDataset& ds, int degree,
                                     std::size_t B, const RngState& rng);

// Parametric variant: simulate Y from the Gaussian fit, refit.
BootstrapEnsemble bootstrap_ensemble_parametric(const ShockDataset& ds, int degree,
                                                std::size_t B, const RngState& rng);

struct CoefficientSummary {
    double mean = 0.0;
    double sd = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};
std::vector<CoefficientSummary> percentile_summary(const BootstrapEnsemble& ens,
                                                   double level);

struct BootstrapBands {
    std::vector<double> up;
    std::vector<double> mean_curve;
    std::vector<double> conf_lo, conf_hi;  // percentile band of fitted curves
    std::vector<double> pred_lo, pred_hi;  // after adding N(0, s^2) noise
};
// s^2 is the full-data estimate (the only one defined outside the loop).
BootstrapBands bootstrap_bands(const ShockDataset& ds, const BootstrapEnsemble& ens,
                               const std::vector<double>& up_grid, double level,
                               const RngState& rng);

struct SensitivityResult {
    BootstrapEnsemble ens_full, ens_dropped;
    PosteriorNIG post_full, post_dropped;
    std::vector<Vec> post_samples_full, post_samples_dropped;
    std::size_t dropped_index = 0;
};
// Removes the unique point with maximal up (TieBreak if not unique) and
// re-runs bootstrap + posterior on both datasets.
SensitivityResult sensitivity_drop_max_up(const ShockDataset& ds, int degree,
                                          std::size_t B, std::size_t sample_count,
                                          const RngState& rng);

}  // namespace shockbayes
