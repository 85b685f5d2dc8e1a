#include "shockbayes/validation.hpp"

#include <algorithm>
#include <cmath>

#include "shockbayes/errors.hpp"
#include "shockbayes/special.hpp"

namespace shockbayes {

GridSpec default_grid(const FitResult& fit, std::size_t points_per_axis,
                      double width_sds, double sigma2_lo_div, double sigma2_hi_mult) {
    if (fit.degree != 1)
        throw UnsupportedDegree("the grid oracle covers degree 1 only");
    double sd0 = std::sqrt(fit.sigma_scale(0, 0) * fit.nu / (fit.nu - 2.0));
    double sd1 = std::sqrt(fit.sigma_scale(1, 1) * fit.nu / (fit.nu - 2.0));
    GridSpec g;
    g.c0 = {fit.beta_hat[0] - width_sds * sd0, fit.beta_hat[0] + width_sds * sd0,
            points_per_axis};
    g.s = {fit.beta_hat[1] - width_sds * sd1, fit.beta_hat[1] + width_sds * sd1,
           points_per_axis};
    g.sigma2 = {fit.s2 / sigma2_lo_div, fit.s2 * sigma2_hi_mult, points_per_axis};
    return g;
}

OracleReport grid_posterior_oracle(const ShockDataset& ds, const GridSpec& grid) {
    validate_dataset(ds);
    if (grid.c0.points < 11 || grid.s.points < 11 || grid.sigma2.points < 11)
        throw DomainError("grid needs at least 11 points per axis");
    if (!(grid.c0.lo < grid.c0.hi) || !(grid.s.lo < grid.s.hi) ||
        !(grid.sigma2.lo < grid.sigma2.hi) || !(grid.sigma2.lo > 0.0))
        throw DomainError("grid axis bounds are invalid");
    const std::size_t n = ds.n();
    const std::size_t nc = grid.c0.points, ns = grid.s.points, nv = grid.sigma2.points;

    std::vector<double> c0s(nc), ss(ns), logs2(nv), s2s(nv);
    for (std::size_t i = 0; i < nc; ++i)
        c0s[i] = grid.c0.lo + (grid.c0.hi - grid.c0.lo) * static_cast<double>(i) /
                                  static_cast<double>(nc - 1);
    for (std::size_t j = 0; j < ns; ++j)
        ss[j] = grid.s.lo + (grid.s.hi - grid.s.lo) * static_cast<double>(j) /
                                static_cast<double>(ns - 1);
    const double llo = std::log(grid.sigma2.lo), lhi = std::log(grid.sigma2.hi);
    for (std::size_t k = 0; k < nv; ++k) {
        logs2[k] = llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(nv - 1);
        s2s[k] = std::exp(logs2[k]);
    }

    // Error sum of squares per (c0, s) cell, straight from the data.
    std::vector<double> sse(nc * ns);
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                double d = ds.us[r] - c0s[i] - ss[j] * ds.up[r];
                acc += d * d;
            }
            sse[i * ns + j] = acc;
        }

    // log posterior kernel: -(n/2) log s2 - sse/(2 s2) - log s2 (prior)
    // + log s2 (log-spacing jacobian) = -(n/2) log s2 - sse/(2 s2).
    // The peak over the grid is at the minimal sse, so the normalizing shift
    // needs only a scan over the sigma^2 axis.
    double sse_min = sse[0];
    for (double v : sse) sse_min = std::min(sse_min, v);
    double logmax = -1e300;
    for (std::size_t k = 0; k < nv; ++k)
        logmax = std::max(logmax, -0.5 * static_cast<double>(n) * logs2[k] -
                                      0.5 * sse_min / s2s[k]);

    double total = 0.0, boundary = 0.0;
    double m_c0 = 0.0, m_s = 0.0, m_v = 0.0;
    double q_c0 = 0.0, q_s = 0.0, q_v = 0.0;
    for (std::size_t k = 0; k < nv; ++k) {
        const double s2 = s2s[k];
        const double lterm = -0.5 * static_cast<double>(n) * logs2[k] - logmax;
        const bool kedge = (k == 0 || k == nv - 1);
        for (std::size_t i = 0; i < nc; ++i) {
            const bool iedge = (i == 0 || i == nc - 1);
            const double* row = &sse[i * ns];
            double rowsum = 0.0, rowsum_s = 0.0, rowsum_s2 = 0.0, rowedge = 0.0;
            for (std::size_t j = 0; j < ns; ++j) {
                double mass = std::exp(lterm - 0.5 * row[j] / s2);
                rowsum += mass;
                rowsum_s += mass * ss[j];
                rowsum_s2 += mass * ss[j] * ss[j];
                if (iedge || kedge || j == 0 || j == ns - 1) rowedge += mass;
            }
            total += rowsum;
            boundary += rowedge;
            m_c0 += rowsum * c0s[i];
            q_c0 += rowsum * c0s[i] * c0s[i];
            m_s += rowsum_s;
            q_s += rowsum_s2;
            m_v += rowsum * s2;
            q_v += rowsum * s2 * s2;
        }
    }
    const double inv_total = 1.0 / total;
    boundary *= inv_total;
    m_c0 *= inv_total; m_s *= inv_total; m_v *= inv_total;
    q_c0 *= inv_total; q_s *= inv_total; q_v *= inv_total;
    if (boundary > 1e-6)
        throw GridTooCoarse("boundary cells carry " + std::to_string(boundary) +
                            " of the posterior mass (> 1e-6); widen the grid");

    FitResult fit = fit_least_squares(ds, 1);
    PosteriorNIG post = posterior_noninformative(fit);
    OracleReport rep;
    rep.boundary_mass = boundary;
    rep.c0.grid_mean = m_c0;
    rep.c0.grid_sd = std::sqrt(std::max(0.0, q_c0 - m_c0 * m_c0));
    rep.s.grid_mean = m_s;
    rep.s.grid_sd = std::sqrt(std::max(0.0, q_s - m_s * m_s));
    rep.sigma2.grid_mean = m_v;
    rep.sigma2.grid_sd = std::sqrt(std::max(0.0, q_v - m_v * m_v));
    rep.c0.closed_mean = post.beta_mean[0];
    rep.s.closed_mean = post.beta_mean[1];
    const double nan = std::nan("");
    if (post.nu > 2.0) {
        SymMatrix cov = beta_covariance(post);
        rep.c0.closed_sd = std::sqrt(cov(0, 0));
        rep.s.closed_sd = std::sqrt(cov(1, 1));
    } else {
        rep.c0.closed_sd = nan;
        rep.s.closed_sd = nan;
    }
    rep.sigma2.closed_mean = post.a > 1.0 ? post.b / (post.a - 1.0) : nan;
    rep.sigma2.closed_sd =
        post.a > 2.0
            ? std::sqrt(post.b * post.b /
                        ((post.a - 1.0) * (post.a - 1.0) * (post.a - 2.0)))
            : nan;
    return rep;
}

std::vector<double> ppc_replicate(const ShockDataset& ds, const Vec& beta,
                                  double sigma2, RngState& rng) {
    const std::size_t n = ds.n();
    std::vector<double> sim(n);
    std::vector<double> noise = sample_std_normal(rng, n);
    const double s = std::sqrt(std::max(0.0, sigma2));
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t k = beta.size(); k-- > 0;) pred = pred * ds.up[i] + beta[k];
        sim[i] = pred + s * noise[i];
    }
    return sim;
}

PPCResult posterior_predictive_check(const PosteriorNIG& post, const ShockDataset& ds,
                                     std::size_t replicates, const RngState& rng) {
    if (replicates < 1) throw DomainError("need at least one replicate");
    PPCResult out;
    out.up = ds.up;
    out.actual = ds.us;
    out.seed = rng.seed;
    out.simulated.reserve(replicates);
    std::vector<JointDraw> draws = sample_joint(post, replicates, rng);
    for (std::size_t r = 0; r < replicates; ++r) {
        RngState st = substream(rng, 0x9cc000 + r);
        out.simulated.push_back(ppc_replicate(ds, draws[r].beta, draws[r].sigma2, st));
    }
    return out;
}

CoverageResult coverage_experiment(const Vec& true_beta, double true_sigma2,
                                   const std::vector<double>& up_design,
                                   double level, std::size_t reps,
                                   const RngState& rng) {
    if (reps < 1) throw DomainError("need at least one replication");
    if (up_design.size() < true_beta.size() + 1)
        throw TooFewPoints("design too small for the coefficient count");
    const int degree = static_cast<int>(true_beta.size()) - 1;
    const std::size_t p = true_beta.size();
    ShockDataset ds;
    ds.material = "synthetic";
    ds.up = up_design;
    ds.us.resize(up_design.size());
    const double s = std::sqrt(true_sigma2);
    std::vector<std::size_t> cover(p, 0);
    std::size_t region_cover = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        RngState st = substream(rng, r);
        std::vector<double> noise = sample_std_normal(st, ds.up.size());
        for (std::size_t i = 0; i < ds.up.size(); ++i) {
            double pred = 0.0;
            for (std::size_t k = p; k-- > 0;) pred = pred * ds.up[i] + true_beta[k];
            double v = pred + s * noise[i];
            ds.us[i] = v > 0.0 ? v : 1e-9;  // keep the dataset valid
        }
        FitResult fit = fit_least_squares(ds, degree);
        PosteriorNIG post = posterior_noninformative(fit);
        for (std::size_t k = 0; k < p; ++k) {
            auto [lo, hi] = credible_interval(post, k, level);
            if (true_beta[k] >= lo && true_beta[k] <= hi) ++cover[k];
        }
        if (degree == 1) {
            Matrix L = cholesky(post.scale);
            Vec centered = {true_beta[0] - post.beta_mean[0],
                            true_beta[1] - post.beta_mean[1]};
            double q = quad_form_inv(L, centered);
            if (q <= 2.0 * f_quantile(level, 2.0, post.nu)) ++region_cover;
        }
    }
    CoverageResult out;
    out.reps = reps;
    out.per_coefficient.resize(p);
    for (std::size_t k = 0; k < p; ++k)
        out.per_coefficient[k] =
            static_cast<double>(cover[k]) / static_cast<double>(reps);
    out.region = static_cast<double>(region_cover) / static_cast<double>(reps);
    return out;
}

}  // namespace shockbayes
