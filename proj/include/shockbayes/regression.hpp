#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "shockbayes/dataset.hpp"
#include "shockbayes/linalg.hpp"
#include "shockbayes/rng.hpp"

namespace shockbayes {

// Least-squares fit of us = b0 + b1 up + ... + bd up^d. Coefficients are
// intercept first; for degree 1 they are (C0, S).
struct FitResult {
    int degree = 1;
    Vec beta_hat;
    Vec residuals;
    double s2 = 0.0;       // residual variance estimate
    int nu = 0;            // n - (degree + 1)
    SymMatrix xtx_inv;     // (X'X)^{-1}
    SymMatrix sigma_scale; // s^2 (X'X)^{-1}
    double r2 = 0.0;
    std::size_t n = 0;
};

// Normal-inverse-gamma posterior. The marginal for the coefficients is
// t_{d+1}(beta_mean, scale, nu); sigma^2 is IG(a, b). `cond_cov_unit` is the
// conditional covariance of beta given sigma^2 = 1 ((X'X)^{-1} for the flat
// prior, G^{-1} with an informative prior), so joint sampling is uniform
// across both cases.
struct PosteriorNIG {
    int degree = 1;
    Vec beta_mean;
    SymMatrix scale;
    double nu = 0.0;
    double a = 0.0;
    double b = 0.0;
    SymMatrix cond_cov_unit;
    double s2 = 0.0;  // scale = s2 * cond_cov_unit
    std::size_t n = 0;
};

struct NIGPrior {
    Vec beta0;
    SymMatrix sigma0;
    double a0 = 0.0;
    double b0 = 0.0;
};

// Location/scale/dof of a univariate t; `scale` is the squared scale
// (variance-like, before the nu/(nu-2) inflation).
struct UnivariateT {
    double mean = 0.0;
    double scale = 0.0;
    double nu = 0.0;

    std::pair<double, double> interval(double level) const;
};

struct CredibleEllipse {
    double center_c0 = 0.0;
    double center_s = 0.0;
    double semi_axis1 = 0.0;  // along first eigenvector
    double semi_axis2 = 0.0;
    Matrix orientation;       // 2x2 orthogonal, columns are axis directions
    double level = 0.0;

    // Boundary point at angle theta.
    std::pair<double, double> boundary(double theta) const;
};

enum class BandKind { credible, prediction };

Matrix design_matrix(const ShockDataset& ds, int degree);

FitResult fit_least_squares(const ShockDataset& ds, int degree);

// Closed form of (X'X)^{-1} for degree 1 (cross-check for the QR path).
SymMatrix xtx_inverse_closed_form(const ShockDataset& ds);

PosteriorNIG posterior_noninformative(const FitResult& fit);

PosteriorNIG posterior_informative(const ShockDataset& ds, int degree,
                                   const NIGPrior& prior);

// nu/(nu-2) * scale; requires nu > 2.
SymMatrix beta_covariance(const PosteriorNIG& post);

std::pair<double, double> credible_interval(const PosteriorNIG& post,
                                            std::size_t index, double level);

CredibleEllipse credible_region_ellipse(const PosteriorNIG& post, double level);

// Draws from the marginal t posterior via the Cholesky + normal + chi-square
// construction. Row-major count x (d+1). One child stream per draw.
std::vector<Vec> sample_beta(const PosteriorNIG& post, std::size_t count,
                             const RngState& rng);

struct JointDraw {
    Vec beta;
    double sigma2 = 0.0;
};
std::vector<JointDraw> sample_joint(const PosteriorNIG& post, std::size_t count,
                                    const RngState& rng);

struct Sigma2Summary {
    double mean = 0.0;
    double sd = 0.0;
    std::function<double(double)> density;
};
// mean requires a > 1 (n > 4 at degree 1), sd requires a > 2 (n > 6).
Sigma2Summary sigma2_posterior_summary(const PosteriorNIG& post);

UnivariateT mean_us_distribution(const PosteriorNIG& post, double up);
UnivariateT predictive_distribution(const PosteriorNIG& post, double up);

struct Band {
    std::vector<double> up;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<double> mid;
};
Band band(const PosteriorNIG& post, const std::vector<double>& up_grid,
          double level, BandKind kind);

// Normalized marginal density of the coefficient vector.
double marginal_beta_density(const PosteriorNIG& post, const Vec& beta);

struct PriorMarginal {
    Vec mean;
    SymMatrix scale;  // (b0/a0) Sigma0
    double nu = 0.0;  // 2 a0
};
PriorMarginal prior_marginal(const NIGPrior& prior);
// Prior covariance (b0/(a0-1)) Sigma0; requires a0 > 1.
SymMatrix prior_covariance(const NIGPrior& prior);

}  // namespace shockbayes
