#include "shockbayes/regression.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "shockbayes/errors.hpp"
#include "shockbayes/special.hpp"

namespace shockbayes {

namespace {

Vec powers(double up, int degree) {
    Vec x(static_cast<std::size_t>(degree) + 1);
    x[0] = 1.0;
    for (int k = 1; k <= degree; ++k) x[k] = x[k - 1] * up;
    return x;
}

}  // namespace

std::pair<double, double> UnivariateT::interval(double level) const {
    if (!(level >= 0.0 && level < 1.0))
        throw DomainError("interval level must be in [0, 1)");
    if (level == 0.0) return {mean, mean};
    double t = student_t_quantile(0.5 * (1.0 + level), nu);
    double h = t * std::sqrt(scale);
    return {mean - h, mean + h};
}

std::pair<double, double> CredibleEllipse::boundary(double theta) const {
    double e1 = semi_axis1 * std::cos(theta);
    double e2 = semi_axis2 * std::sin(theta);
    double dc0 = orientation(0, 0) * e1 + orientation(0, 1) * e2;
    double ds = orientation(1, 0) * e1 + orientation(1, 1) * e2;
    return {center_c0 + dc0, center_s + ds};
}

Matrix design_matrix(const ShockDataset& ds, int degree) {
    const std::size_t n = ds.n();
    Matrix X(n, static_cast<std::size_t>(degree) + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double v = 1.0;
        for (int k = 0; k <= degree; ++k) {
            X(i, static_cast<std::size_t>(k)) = v;
            v *= ds.up[i];
        }
    }
    return X;
}

FitResult fit_least_squares(const ShockDataset& ds, int degree) {
    if (degree < 1) throw DomainError("degree must be >= 1");
    const std::size_t n = ds.n();
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    if (n < p + 1)
        throw TooFewPoints("need at least degree + 2 = " + std::to_string(p + 1) +
                           " points, got " + std::to_string(n));
    std::set<double> distinct(ds.up.begin(), ds.up.end());
    if (distinct.size() < p)
        throw RankDeficient("need at least " + std::to_string(p) +
                            " distinct particle velocities");
    Matrix X = design_matrix(ds, degree);
    LstsqResult ls = lstsq_qr(X, ds.us);
    FitResult fit;
    fit.degree = degree;
    fit.n = n;
    fit.beta_hat = ls.beta;
    fit.xtx_inv = ls.xtx_inv;
    fit.nu = static_cast<int>(n - p);
    fit.residuals.resize(n);
    double sse = 0.0, sst = 0.0;
    double ybar = 0.0, yscale = 0.0;
    for (double v : ds.us) {
        ybar += v;
        yscale = std::max(yscale, std::fabs(v));
    }
    ybar /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t k = 0; k < p; ++k) pred += X(i, k) * fit.beta_hat[k];
        fit.residuals[i] = ds.us[i] - pred;
        sse += fit.residuals[i] * fit.residuals[i];
        sst += (ds.us[i] - ybar) * (ds.us[i] - ybar);
    }
    // residuals at rounding-noise level are an exactly collinear dataset
    if (sse <= 1e-24 * static_cast<double>(n) * yscale * yscale) sse = 0.0;
    fit.s2 = sse / static_cast<double>(fit.nu);
    fit.r2 = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 0.0;
    fit.sigma_scale = fit.xtx_inv.scaled(fit.s2);
    return fit;
}

SymMatrix xtx_inverse_closed_form(const ShockDataset& ds) {
    const std::size_t n = ds.n();
    double xbar = 0.0, sumsq = 0.0;
    for (double v : ds.up) xbar += v;
    xbar /= static_cast<double>(n);
    for (double v : ds.up) sumsq += v * v;
    double sxx = 0.0;
    for (double v : ds.up) sxx += (v - xbar) * (v - xbar);
    if (!(sxx > 0.0)) throw DegenerateDesign("sum of squared centered up is zero");
    double f = 1.0 / sxx;
    return SymMatrix(2, {f * sumsq / static_cast<double>(n), -f * xbar,
                         -f * xbar, f});
}

PosteriorNIG posterior_noninformative(const FitResult& fit) {
    if (!(fit.s2 > 0.0))
        throw DegenerateResiduals(
            "residual variance is zero; the flat-prior posterior is improper");
    if (fit.nu < 1) throw DomainError("posterior requires nu >= 1");
    PosteriorNIG post;
    post.degree = fit.degree;
    post.beta_mean = fit.beta_hat;
    post.scale = fit.sigma_scale;
    post.nu = static_cast<double>(fit.nu);
    post.a = 0.5 * static_cast<double>(fit.nu);
    post.b = 0.5 * static_cast<double>(fit.nu) * fit.s2;
    post.cond_cov_unit = fit.xtx_inv;
    post.s2 = fit.s2;
    post.n = fit.n;
    return post;
}

PosteriorNIG posterior_informative(const ShockDataset& ds, int degree,
                                   const NIGPrior& prior) {
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    if (prior.beta0.size() != p || prior.sigma0.dim() != p)
        throw ConfigError("prior dimension does not match degree + 1");
    if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0))
        throw ConfigError("prior requires a0 > 0 and b0 > 0");
    const std::size_t n = ds.n();
    Matrix X = design_matrix(ds, degree);
    SymMatrix sigma0_inv = sym_inverse(prior.sigma0);
    // G = X'X + Sigma0^{-1}
    std::vector<double> g(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double s = sigma0_inv(i, j);
            for (std::size_t r = 0; r < n; ++r) s += X(r, i) * X(r, j);
            g[i * p + j] = s;
        }
    SymMatrix G(p, std::move(g));
    // gamma = X'Y + Sigma0^{-1} beta0
    Vec gamma(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += X(r, i) * ds.us[r];
        for (std::size_t j = 0; j < p; ++j) s += sigma0_inv(i, j) * prior.beta0[j];
        gamma[i] = s;
    }
    Matrix Lg;
    try {
        Lg = cholesky(G);
    } catch (const NotPositiveDefinite&) {
        throw SingularPrecision("posterior precision X'X + Sigma0^{-1} is singular");
    }
    Vec beta_t = chol_solve(Lg, gamma);
    double yty = 0.0;
    for (double v : ds.us) yty += v * v;
    double b0q = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            b0q += prior.beta0[i] * sigma0_inv(i, j) * prior.beta0[j];
    double gq = 0.0;
    for (std::size_t i = 0; i < p; ++i) gq += gamma[i] * beta_t[i];
    double a_t = prior.a0 + 0.5 * static_cast<double>(n);
    double b_t = prior.b0 + 0.5 * (yty + b0q - gq);
    if (!(b_t > 0.0))
        throw DegenerateResiduals("informative posterior scale parameter is not positive");
    PosteriorNIG post;
    post.degree = degree;
    post.beta_mean = beta_t;
    post.cond_cov_unit = sym_inverse(G);
    post.s2 = b_t / a_t;
    post.scale = post.cond_cov_unit.scaled(post.s2);
    post.nu = 2.0 * a_t;
    post.a = a_t;
    post.b = b_t;
    post.n = n;
    return post;
}

SymMatrix beta_covariance(const PosteriorNIG& post) {
    if (!(post.nu > 2.0))
        throw UndefinedCovariance("posterior covariance requires nu > 2 (n > " +
                                  std::to_string(post.degree + 3) + " at this degree)");
    return post.scale.scaled(post.nu / (post.nu - 2.0));
}

std::pair<double, double> credible_interval(const PosteriorNIG& post,
                                            std::size_t index, double level) {
    if (index >= post.beta_mean.size()) throw DomainError("coefficient index out of range");
    if (!(level >= 0.0) || !(level < 1.0))
        throw DomainError("credible level must be in [0, 1)");
    if (level == 0.0) return {post.beta_mean[index], post.beta_mean[index]};
    double t = student_t_quantile(0.5 * (1.0 + level), post.nu);
    double h = t * std::sqrt(post.scale(index, index));
    return {post.beta_mean[index] - h, post.beta_mean[index] + h};
}

CredibleEllipse credible_region_ellipse(const PosteriorNIG& post, double level) {
    if (post.degree != 1)
        throw UnsupportedDegree("credible region ellipse is defined for degree 1 only");
    if (!(level > 0.0) || !(level < 1.0)) throw DomainError("level must be in (0, 1)");
    double f = f_quantile(level, 2.0, post.nu);
    Eig2 eig = sym_eig_2x2(post.scale);
    CredibleEllipse e;
    e.center_c0 = post.beta_mean[0];
    e.center_s = post.beta_mean[1];
    e.semi_axis1 = std::sqrt(2.0 * eig.lambda1 * f);
    e.semi_axis2 = std::sqrt(2.0 * eig.lambda2 * f);
    e.orientation = eig.u;
    e.level = level;
    return e;
}

std::vector<Vec> sample_beta(const PosteriorNIG& post, std::size_t count,
                             const RngState& rng) {
    if (count < 1) throw DomainError("sample count must be >= 1");
    const std::size_t p = post.beta_mean.size();
    Matrix L = cholesky(post.scale);
    std::vector<Vec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        RngState st = substream(rng, i);
        Vec z = sample_std_normal(st, p);
        double w = sample_chi_square(st, post.nu);
        double f = std::sqrt(post.nu / w);
        Vec beta(p);
        for (std::size_t r = 0; r < p; ++r) {
            double s = 0.0;
            for (std::size_t k = 0; k <= r; ++k) s += L(r, k) * z[k];
            beta[r] = post.beta_mean[r] + f * s;
        }
        out.push_back(std::move(beta));
    }
    return out;
}

std::vector<JointDraw> sample_joint(const PosteriorNIG& post, std::size_t count,
                                    const RngState& rng) {
    if (count < 1) throw DomainError("sample count must be >= 1");
    const std::size_t p = post.beta_mean.size();
    Matrix L = cholesky(post.cond_cov_unit);
    std::vector<JointDraw> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        RngState st = substream(rng, i);
        double sigma2 = sample_inverse_gamma(st, post.a, post.b);
        Vec z = sample_std_normal(st, p);
        double f = std::sqrt(sigma2);
        Vec beta(p);
        for (std::size_t r = 0; r < p; ++r) {
            double s = 0.0;
            for (std::size_t k = 0; k <= r; ++k) s += L(r, k) * z[k];
            beta[r] = post.beta_mean[r] + f * s;
        }
        out.push_back(JointDraw{std::move(beta), sigma2});
    }
    return out;
}

Sigma2Summary sigma2_posterior_summary(const PosteriorNIG& post) {
    Sigma2Summary s;
    const double a = post.a, b = post.b;
    const int d = post.degree;
    if (!(a > 1.0))
        throw UndefinedMoment("posterior mean of sigma^2 requires a > 1 (n > " +
                              std::to_string(d + 3) + " at degree " + std::to_string(d) + ")");
    s.mean = b / (a - 1.0);
    if (a > 2.0) {
        s.sd = std::sqrt(b * b / ((a - 1.0) * (a - 1.0) * (a - 2.0)));
    } else {
        throw UndefinedMoment("posterior sd of sigma^2 requires a > 2 (n > " +
                              std::to_string(d + 5) + " at degree " + std::to_string(d) + ")");
    }
    s.density = [a, b](double x) { return inverse_gamma_pdf(x, a, b); };
    return s;
}

UnivariateT mean_us_distribution(const PosteriorNIG& post, double up) {
    Vec x = powers(up, post.degree);
    double mean = 0.0, q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean += x[i] * post.beta_mean[i];
        for (std::size_t j = 0; j < x.size(); ++j) q += x[i] * post.scale(i, j) * x[j];
    }
    return UnivariateT{mean, q, post.nu};
}

UnivariateT predictive_distribution(const PosteriorNIG& post, double up) {
    UnivariateT t = mean_us_distribution(post, up);
    t.scale += post.s2;
    return t;
}

Band band(const PosteriorNIG& post, const std::vector<double>& up_grid,
          double level, BandKind kind) {
    if (up_grid.empty()) throw EmptyInput("band requires a non-empty grid");
    Band b;
    b.up = up_grid;
    b.lo.resize(up_grid.size());
    b.hi.resize(up_grid.size());
    b.mid.resize(up_grid.size());
    for (std::size_t i = 0; i < up_grid.size(); ++i) {
        UnivariateT t = kind == BandKind::credible
                            ? mean_us_distribution(post, up_grid[i])
                            : predictive_distribution(post, up_grid[i]);
        auto [lo, hi] = t.interval(level);
        b.lo[i] = lo;
        b.hi[i] = hi;
        b.mid[i] = t.mean;
    }
    return b;
}

double marginal_beta_density(const PosteriorNIG& post, const Vec& beta) {
    const std::size_t p = post.beta_mean.size();
    if (beta.size() != p) throw DomainError("beta dimension mismatch");
    Matrix L = cholesky(post.scale);
    Vec centered(p);
    for (std::size_t i = 0; i < p; ++i) centered[i] = beta[i] - post.beta_mean[i];
    double q = quad_form_inv(L, centered);
    const double nu = post.nu;
    const double pd = static_cast<double>(p);
    double logc = std::lgamma(0.5 * (nu + pd)) - std::lgamma(0.5 * nu) -
                  0.5 * pd * std::log(nu * 3.14159265358979323846) -
                  0.5 * chol_logdet(L);
    return std::exp(logc - 0.5 * (nu + pd) * std::log1p(q / nu));
}

PriorMarginal prior_marginal(const NIGPrior& prior) {
    if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0))
        throw ConfigError("prior requires a0 > 0 and b0 > 0");
    PriorMarginal m;
    m.mean = prior.beta0;
    m.scale = prior.sigma0.scaled(prior.b0 / prior.a0);
    m.nu = 2.0 * prior.a0;
    return m;
}

SymMatrix prior_covariance(const NIGPrior& prior) {
    if (!(prior.a0 > 1.0))
        throw UndefinedMoment("prior covariance requires a0 > 1");
    return prior.sigma0.scaled(prior.b0 / (prior.a0 - 1.0));
}

}  // namespace shockbayes
