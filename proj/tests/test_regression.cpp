#include <doctest.h>

#include <cmath>
#include <random>

#include "shockbayes/dataset.hpp"
#include "shockbayes/errors.hpp"
#include "shockbayes/regression.hpp"
#include "shockbayes/special.hpp"
#include "test_oracles.hpp"

using namespace shockbayes;

#ifndef SHOCKBAYES_DATA_DIR
#define SHOCKBAYES_DATA_DIR "data"
#endif

static std::string data_path(const std::string& name) {
    return std::string(SHOCKBAYES_DATA_DIR) + "/" + name;
}

static ShockDataset make_ds(std::vector<double> up, std::vector<double> us) {
    ShockDataset ds;
    ds.material = "synthetic";
    ds.up = std::move(up);
    ds.us = std::move(us);
    validate_dataset(ds);
    return ds;
}

TEST_CASE("perfect line fits exactly") {
    ShockDataset ds = make_ds({0.0, 1.0, 2.0}, {2.0, 3.5, 5.0});
    FitResult fit = fit_least_squares(ds, 1);
    CHECK(fit.beta_hat[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.beta_hat[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.s2 == doctest::Approx(0.0).scale(1.0));
    CHECK(fit.r2 == doctest::Approx(1.0));
    CHECK(fit.nu == 1);
    // degenerate posterior must refuse
    CHECK_THROWS_AS(posterior_noninformative(fit), DegenerateResiduals);
}

TEST_CASE("bundled copper matches the reference fit") {
    ShockDataset ds = load_dataset_file(data_path("copper.csv"), "copper");
    FitResult fit = fit_least_squares(ds, 1);
    CHECK(std::fabs(fit.beta_hat[0] - 3.913) <= 0.001);
    CHECK(std::fabs(fit.beta_hat[1] - 1.508) <= 0.001);
    CHECK(fit.r2 > 0.99);
    CHECK(fit.nu == 142);
    // residuals sum to zero with an intercept present
    double rs = 0.0, ymax = 0.0;
    for (double r : fit.residuals) rs += r;
    for (double y : ds.us) ymax = std::max(ymax, std::fabs(y));
    CHECK(std::fabs(rs) <= 1e-9 * double(ds.n()) * ymax);
    // sigma_scale == s2 * xtx_inv entrywise
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(fit.sigma_scale(i, j) ==
                  doctest::Approx(fit.s2 * fit.xtx_inv(i, j)).epsilon(1e-12));
}

TEST_CASE("random dataset matches grid-search oracle") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> ux(0.1, 3.0);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::vector<double> up, us;
    for (int i = 0; i < 6; ++i) {
        double x = ux(gen);
        up.push_back(x);
        us.push_back(1.7 + 1.4 * x + noise(gen));
    }
    ShockDataset ds = make_ds(up, us);
    FitResult fit = fit_least_squares(ds, 1);
    auto [c_or, s_or] = oracle::grid_search_line(up, us);
    CHECK(fit.beta_hat[0] == doctest::Approx(c_or).epsilon(1e-6));
    CHECK(fit.beta_hat[1] == doctest::Approx(s_or).epsilon(1e-6));
}

TEST_CASE("error paths for the fit") {
    ShockDataset tiny = make_ds({0.0, 1.0, 2.0}, {2.0, 3.4, 5.1});
    CHECK_THROWS_AS(fit_least_squares(tiny, 2), TooFewPoints);
    ShockDataset thin;
    thin.up = {1.0, 1.0, 1.0, 2.0};
    thin.us = {2.0, 2.1, 2.2, 3.0};
    CHECK_THROWS_AS(fit_least_squares(thin, 2), RankDeficient);
}

TEST_CASE("closed-form (X'X)^{-1}") {
    ShockDataset ds = make_ds({0.0, 1.0, 2.0}, {2.0, 3.4, 5.1});
    SymMatrix m = xtx_inverse_closed_form(ds);
    CHECK(m(0, 0) == doctest::Approx(0.5 * 5.0 / 3.0).epsilon(1e-12));
    CHECK(m(0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(m(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    // agrees with the QR path
    FitResult fit = fit_least_squares(ds, 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(m(i, j) == doctest::Approx(fit.xtx_inv(i, j)).epsilon(1e-10));
    // positive mean up -> negative off-diagonal
    CHECK(m(0, 1) < 0.0);
    // centered design -> exactly zero off-diagonal
    ShockDataset c;
    c.material = "c";
    c.up = {-1.0, 0.0, 1.0};
    c.us = {1.0, 2.0, 3.1};
    // up >= 0 is a dataset invariant; call the closed form on raw vectors via
    // a dataset that skips validation
    SymMatrix mc = xtx_inverse_closed_form(c);
    CHECK(mc(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("posterior mean equals the least squares estimate") {
    ShockDataset ds = load_dataset_file(data_path("argon.csv"), "argon");
    FitResult fit = fit_least_squares(ds, 1);
    PosteriorNIG post = posterior_noninformative(fit);
    CHECK(post.beta_mean[0] == fit.beta_hat[0]);
    CHECK(post.beta_mean[1] == fit.beta_hat[1]);
    CHECK(std::fabs(post.beta_mean[0] - 1.293) <= 0.001);
    CHECK(std::fabs(post.beta_mean[1] - 1.621) <= 0.001);
    // a = nu/2, b = nu s^2 / 2
    CHECK(post.a == doctest::Approx(0.5 * fit.nu));
    CHECK(post.b == doctest::Approx(0.5 * fit.nu * fit.s2));
}

TEST_CASE("posterior covariance identity and boundary") {
    ShockDataset ds = load_dataset_file(data_path("copper.csv"), "copper");
    FitResult fit = fit_least_squares(ds, 1);
    PosteriorNIG post = posterior_noninformative(fit);
    SymMatrix cov = beta_covariance(post);
    double f = post.nu / (post.nu - 2.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(cov(i, j) ==
                  doctest::Approx(f * fit.s2 * fit.xtx_inv(i, j)).epsilon(1e-12));
    CHECK(std::fabs(std::sqrt(cov(0, 0)) - 0.011) <= 0.001);
    CHECK(std::fabs(std::sqrt(cov(1, 1)) - 0.007) <= 0.001);

    // nu = 4, diag scale -> factor 2
    PosteriorNIG toy;
    toy.degree = 1;
    toy.beta_mean = {0.0, 0.0};
    toy.scale = SymMatrix::identity(2);
    toy.nu = 4.0;
    toy.a = 2.0;
    toy.b = 2.0;
    toy.cond_cov_unit = SymMatrix::identity(2);
    toy.s2 = 1.0;
    SymMatrix c2 = beta_covariance(toy);
    CHECK(c2(0, 0) == doctest::Approx(2.0));

    // n = 5 (nu = 3) defined, n = 4 (nu = 2) undefined
    ShockDataset five = make_ds({0.1, 0.5, 1.0, 1.5, 2.0},
                                {2.05, 2.84, 3.52, 4.36, 5.08});
    PosteriorNIG p5 = posterior_noninformative(fit_least_squares(five, 1));
    CHECK_NOTHROW(beta_covariance(p5));
    ShockDataset four = make_ds({0.1, 0.5, 1.0, 1.5},
                                {2.05, 2.84, 3.52, 4.36});
    PosteriorNIG p4 = posterior_noninformative(fit_least_squares(four, 1));
    CHECK_THROWS_AS(beta_covariance(p4), UndefinedCovariance);
}

TEST_CASE("credible intervals reproduce the reference table") {
    ShockDataset ar = load_dataset_file(data_path("argon.csv"), "argon");
    PosteriorNIG post = posterior_noninformative(fit_least_squares(ar, 1));
    auto [lo0, hi0] = credible_interval(post, 0, 0.95);
    CHECK(std::fabs(lo0 - 1.052) <= 0.001);
    CHECK(std::fabs(hi0 - 1.535) <= 0.001);
    ShockDataset ni = load_dataset_file(data_path("nickel.csv"), "nickel");
    PosteriorNIG pni = posterior_noninformative(fit_least_squares(ni, 1));
    auto [lo1, hi1] = credible_interval(pni, 1, 0.95);
    CHECK(std::fabs(lo1 - 1.411) <= 0.001);
    CHECK(std::fabs(hi1 - 1.491) <= 0.001);
    // level -> 0 collapses to the mean
    auto [l0, h0] = credible_interval(post, 0, 0.0);
    CHECK(l0 == doctest::Approx(post.beta_mean[0]));
    CHECK(h0 == doctest::Approx(post.beta_mean[0]));
}

TEST_CASE("flat-prior credible interval equals the classical t interval") {
    ShockDataset ds = load_dataset_file(data_path("nickel.csv"), "nickel");
    FitResult fit = fit_least_squares(ds, 1);
    PosteriorNIG post = posterior_noninformative(fit);
    // classical: beta_hat_k +- t_{0.975, nu} * se_k, coded directly
    double tq = student_t_quantile(0.975, double(fit.nu));
    for (std::size_t k = 0; k < 2; ++k) {
        double se = std::sqrt(fit.s2 * fit.xtx_inv(k, k));
        auto [lo, hi] = credible_interval(post, k, 0.95);
        CHECK(lo == doctest::Approx(fit.beta_hat[k] - tq * se).epsilon(1e-12));
        CHECK(hi == doctest::Approx(fit.beta_hat[k] + tq * se).epsilon(1e-12));
    }
}

TEST_CASE("informative posterior limits") {
    ShockDataset ds = load_dataset_file(data_path("copper.csv"), "copper");
    FitResult fit = fit_least_squares(ds, 1);

    NIGPrior weak;
    weak.beta0 = {3.0, 1.0};
    weak.sigma0 = SymMatrix(2, {1e12, 0.0, 0.0, 1e12});
    weak.a0 = 1e-6;
    weak.b0 = 1e-6;
    PosteriorNIG pw = posterior_informative(ds, 1, weak);
    CHECK(std::fabs(pw.beta_mean[0] - fit.beta_hat[0]) < 1e-6);
    CHECK(std::fabs(pw.beta_mean[1] - fit.beta_hat[1]) < 1e-6);

    NIGPrior strong;
    strong.beta0 = {3.0, 1.0};
    strong.sigma0 = SymMatrix(2, {1e-12, 0.0, 0.0, 1e-12});
    strong.a0 = 2.0;
    strong.b0 = 1.0;
    PosteriorNIG ps = posterior_informative(ds, 1, strong);
    CHECK(std::fabs(ps.beta_mean[0] - 3.0) < 1e-6);
    CHECK(std::fabs(ps.beta_mean[1] - 1.0) < 1e-6);
}

TEST_CASE("informative posterior matches direct dense evaluation") {
    ShockDataset ds = load_dataset_file(data_path("copper.csv"), "copper");
    const std::size_t n = ds.n();
    for (double rho : {0.0, -0.2, -0.8}) {
        NIGPrior prior;
        prior.beta0 = {3.8, 1.4};
        double s11 = 0.2, s22 = 0.1;
        prior.sigma0 = SymMatrix(2, {s11 * s11, rho * s11 * s22,
                                     rho * s11 * s22, s22 * s22});
        prior.a0 = 3.0;
        prior.b0 = 0.02;
        PosteriorNIG post = posterior_informative(ds, 1, prior);

        // independent dense evaluation of the same formulas
        double sxx = 0.0, sx = 0.0, sy = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += ds.up[i];
            sxx += ds.up[i] * ds.up[i];
            sy += ds.us[i];
            sxy += ds.up[i] * ds.us[i];
            syy += ds.us[i] * ds.us[i];
        }
        double det = prior.sigma0(0, 0) * prior.sigma0(1, 1) -
                     prior.sigma0(0, 1) * prior.sigma0(0, 1);
        double i00 = prior.sigma0(1, 1) / det, i11 = prior.sigma0(0, 0) / det,
               i01 = -prior.sigma0(0, 1) / det;
        std::vector<std::vector<double>> G = {
            {double(n) + i00, sx + i01},
            {sx + i01, sxx + i11}};
        std::vector<double> gam = {
            sy + i00 * prior.beta0[0] + i01 * prior.beta0[1],
            sxy + i01 * prior.beta0[0] + i11 * prior.beta0[1]};
        auto beta_t = oracle::gauss_solve(G, gam);
        CHECK(post.beta_mean[0] == doctest::Approx(beta_t[0]).epsilon(1e-10));
        CHECK(post.beta_mean[1] == doctest::Approx(beta_t[1]).epsilon(1e-10));
        double b0q = prior.beta0[0] * (i00 * prior.beta0[0] + i01 * prior.beta0[1]) +
                     prior.beta0[1] * (i01 * prior.beta0[0] + i11 * prior.beta0[1]);
        double gq = gam[0] * beta_t[0] + gam[1] * beta_t[1];
        double a_t = prior.a0 + 0.5 * n;
        double b_t = prior.b0 + 0.5 * (syy + b0q - gq);
        CHECK(post.a == doctest::Approx(a_t).epsilon(1e-12));
        CHECK(post.b == doctest::Approx(b_t).epsilon(1e-10));
        CHECK(post.nu == doctest::Approx(2.0 * a_t));

        // the posterior mean sits on the G-weighted path between the prior
        // mean and the fit: it contracts toward the fit in the data metric
        // and toward the prior mean in the prior metric
        FitResult fit = fit_least_squares(ds, 1);
        auto quad = [](double q00, double q01, double q11, double v0, double v1) {
            return v0 * (q00 * v0 + q01 * v1) + v1 * (q01 * v0 + q11 * v1);
        };
        double d_fit0 = post.beta_mean[0] - fit.beta_hat[0];
        double d_fit1 = post.beta_mean[1] - fit.beta_hat[1];
        double p_fit0 = prior.beta0[0] - fit.beta_hat[0];
        double p_fit1 = prior.beta0[1] - fit.beta_hat[1];
        CHECK(quad(double(n), sx, sxx, d_fit0, d_fit1) <=
              quad(double(n), sx, sxx, p_fit0, p_fit1) * (1.0 + 1e-12));
        double d_pr0 = post.beta_mean[0] - prior.beta0[0];
        double d_pr1 = post.beta_mean[1] - prior.beta0[1];
        CHECK(quad(i00, i01, i11, d_pr0, d_pr1) <=
              quad(i00, i01, i11, -p_fit0, -p_fit1) * (1.0 + 1e-12));
    }
}

TEST_CASE("sigma2 posterior summary") {
    PosteriorNIG post;
    post.degree = 1;
    post.a = 5.0;
    post.b = 8.0;
    post.nu = 10.0;
    post.beta_mean = {0.0, 0.0};
    post.scale = SymMatrix::identity(2);
    post.cond_cov_unit = SymMatrix::identity(2);
    post.s2 = 1.6;
    Sigma2Summary s = sigma2_posterior_summary(post);
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.sd * s.sd == doctest::Approx(64.0 / 48.0).epsilon(1e-12));
    CHECK(s.density(2.0) > 0.0);

    // n = 5 at degree 1: mean defined, sd undefined
    ShockDataset five;
    five.up = {0.1, 0.5, 1.0, 1.5, 2.0};
    five.us = {2.05, 2.84, 3.52, 4.36, 5.08};
    PosteriorNIG p5 = posterior_noninformative(fit_least_squares(five, 1));
    CHECK_THROWS_AS(sigma2_posterior_summary(p5), UndefinedMoment);
    ShockDataset four;
    four.up = {0.1, 0.5, 1.0, 1.5};
    four.us = {2.05, 2.84, 3.52, 4.36};
    PosteriorNIG p4 = posterior_noninformative(fit_least_squares(four, 1));
    CHECK_THROWS_AS(sigma2_posterior_summary(p4), UndefinedMoment);
}

TEST_CASE("marginal density: MAP, normalization, kernel ratios") {
    ShockDataset ds = load_dataset_file(data_path("nickel.csv"), "nickel");
    PosteriorNIG post = posterior_noninformative(fit_least_squares(ds, 1));
    double at_map = marginal_beta_density(post, post.beta_mean);
    SymMatrix cov = beta_covariance(post);
    double sd0 = std::sqrt(cov(0, 0)), sd1 = std::sqrt(cov(1, 1));
    // MAP maximizes
    for (double d0 : {-2.0, -0.5, 0.5, 2.0})
        for (double d1 : {-2.0, -0.5, 0.5, 2.0})
            CHECK(marginal_beta_density(
                      post, {post.beta_mean[0] + d0 * sd0,
                             post.beta_mean[1] + d1 * sd1}) < at_map);
    // 2-D midpoint quadrature over +-8 sd integrates to 1
    const int K = 400;
    double lo0 = post.beta_mean[0] - 8.0 * sd0, hi0 = post.beta_mean[0] + 8.0 * sd0;
    double lo1 = post.beta_mean[1] - 8.0 * sd1, hi1 = post.beta_mean[1] + 8.0 * sd1;
    double h0 = (hi0 - lo0) / K, h1 = (hi1 - lo1) / K;
    double total = 0.0;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            total += marginal_beta_density(
                post, {lo0 + (i + 0.5) * h0, lo1 + (j + 0.5) * h1});
    total *= h0 * h1;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
    // density ratios match the unnormalized kernel exactly
    Vec p1 = {post.beta_mean[0] + 0.7 * sd0, post.beta_mean[1] - 0.2 * sd1};
    Vec p2 = {post.beta_mean[0] - 1.1 * sd0, post.beta_mean[1] + 0.9 * sd1};
    Matrix L = cholesky(post.scale);
    auto kernel = [&](const Vec& b) {
        Vec c = {b[0] - post.beta_mean[0], b[1] - post.beta_mean[1]};
        double q = quad_form_inv(L, c);
        return std::pow(1.0 + q / post.nu, -0.5 * (post.nu + 2.0));
    };
    CHECK(marginal_beta_density(post, p1) / marginal_beta_density(post, p2) ==
          doctest::Approx(kernel(p1) / kernel(p2)).epsilon(1e-12));
}

TEST_CASE("prior marginal") {
    NIGPrior prior;
    prior.beta0 = {1.0, 2.0};
    prior.sigma0 = SymMatrix::identity(2);
    prior.a0 = 3.0;
    prior.b0 = 2.0;
    PriorMarginal m = prior_marginal(prior);
    CHECK(m.nu == doctest::Approx(6.0));
    CHECK(m.scale(0, 0) == doctest::Approx(2.0 / 3.0));
    SymMatrix cov = prior_covariance(prior);
    CHECK(cov(0, 0) == doctest::Approx(1.0));
    CHECK(cov(1, 1) == doctest::Approx(1.0));
    NIGPrior flat = prior;
    flat.a0 = 0.9;
    CHECK_THROWS_AS(prior_covariance(flat), UndefinedMoment);
}

TEST_CASE("scale equivariance of the fit") {
    ShockDataset ds = load_dataset_file(data_path("nickel.csv"), "nickel");
    FitResult f1 = fit_least_squares(ds, 1);
    PosteriorNIG p1 = posterior_noninformative(f1);
    auto [lo, hi] = credible_interval(p1, 0, 0.95);
    const double c = 2.5;
    ShockDataset sc = ds;
    for (double& v : sc.us) v *= c;
    FitResult f2 = fit_least_squares(sc, 1);
    PosteriorNIG p2 = posterior_noninformative(f2);
    auto [lo2, hi2] = credible_interval(p2, 0, 0.95);
    CHECK(f2.beta_hat[0] == doctest::Approx(c * f1.beta_hat[0]).epsilon(1e-10));
    CHECK(f2.beta_hat[1] == doctest::Approx(c * f1.beta_hat[1]).epsilon(1e-10));
    CHECK(std::sqrt(f2.s2) == doctest::Approx(c * std::sqrt(f1.s2)).epsilon(1e-10));
    CHECK(f2.r2 == doctest::Approx(f1.r2).epsilon(1e-12));
    CHECK(lo2 == doctest::Approx(c * lo).epsilon(1e-10));
    CHECK(hi2 == doctest::Approx(c * hi).epsilon(1e-10));
}

TEST_CASE("cubic degree fits a cubic exactly") {
    std::vector<double> up, us;
    for (int i = 0; i <= 8; ++i) {
        double x = 0.25 * i;
        up.push_back(x);
        us.push_back(1.5 + 1.2 * x + 0.3 * x * x - 0.02 * x * x * x);
    }
    ShockDataset ds = make_ds(up, us);
    FitResult fit = fit_least_squares(ds, 3);
    CHECK(fit.beta_hat[0] == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(fit.beta_hat[1] == doctest::Approx(1.2).epsilon(1e-8));
    CHECK(fit.beta_hat[2] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(fit.beta_hat[3] == doctest::Approx(-0.02).epsilon(1e-6));
    CHECK(fit.nu == 5);
}
