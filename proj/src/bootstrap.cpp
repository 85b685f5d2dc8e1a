#include "shockbayes/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "shockbayes/errors.hpp"
#include "shockbayes/quantile.hpp"

namespace shockbayes {

std::vector<std::size_t> resample_indices(RngState& rng, std::size_t n) {
    if (n < 1) throw DomainError("resample_indices requires n >= 1");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = uniform01(rng);
        idx[i] = static_cast<std::size_t>(u * static_cast<double>(n));
        if (idx[i] >= n) idx[i] = n - 1;
    }
    return idx;
}

namespace {

bool full_rank_subset(const std::vector<double>& up,
                      const std::vector<std::size_t>& idx, std::size_t p) {
    std::set<double> distinct;
    for (std::size_t i : idx) {
        distinct.insert(up[i]);
        if (distinct.size() >= p) return true;
    }
    return false;
}

BootstrapEnsemble run_bootstrap(const ShockDataset& ds, int degree, std::size_t B,
                                const RngState& rng, bool parametric) {
    if (B < 1) throw DomainError("bootstrap requires B >= 1");
    validate_dataset(ds);
    const std::size_t n = ds.n();
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    FitResult base = fit_least_squares(ds, degree);
    const double s_full = std::sqrt(base.s2);

    BootstrapEnsemble ens;
    ens.B = B;
    ens.degree = degree;
    ens.seed = rng.seed;
    ens.estimates.resize(B * p);

    ShockDataset re;
    re.material = ds.material;
    re.up.resize(n);
    re.us.resize(n);
    for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t attempt = 0;; ++attempt) {
            RngState st = substream(rng, b * 1000003ull + attempt);
            if (parametric) {
                re.up = ds.up;
                std::vector<double> noise = sample_std_normal(st, n);
                for (std::size_t i = 0; i < n; ++i) {
                    double pred = 0.0;
                    double v = 1.0;
                    for (std::size_t k = 0; k < p; ++k) {
                        pred += base.beta_hat[k] * v;
                        v *= ds.up[i];
                    }
                    re.us[i] = pred + s_full * noise[i];
                }
            } else {
                std::vector<std::size_t> idx = resample_indices(st, n);
                if (!full_rank_subset(ds.up, idx, p)) {
                    ++ens.redraws;
                    if (static_cast<double>(ens.redraws) > 0.01 * static_cast<double>(B))
                        throw ExcessiveRedraws(
                            "more than 1% of resamples were rank deficient");
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    re.up[i] = ds.up[idx[i]];
                    re.us[i] = ds.us[idx[i]];
                }
            }
            FitResult fit = fit_least_squares(re, degree);
            for (std::size_t k = 0; k < p; ++k) ens.estimates[b * p + k] = fit.beta_hat[k];
            break;
        }
    }
    return ens;
}

}  // namespace

BootstrapEnsemble bootstrap_ensemble(const ShockDataset& ds, int degree,
                                     std::size_t B, const RngState& rng) {
    return run_bootstrap(ds, degree, B, rng, false);
}

BootstrapEnsemble bootstrap_ensemble_parametric(const ShockDataset& ds, int degree,
                                                std::size_t B, const RngState& rng) {
    return run_bootstrap(ds, degree, B, rng, true);
}

std::vector<CoefficientSummary> percentile_summary(const BootstrapEnsemble& ens,
                                                   double level) {
    if (!(level > 0.0) || !(level < 1.0)) throw DomainError("level must be in (0, 1)");
    const std::size_t p = static_cast<std::size_t>(ens.degree) + 1;
    std::vector<CoefficientSummary> out(p);
    std::vector<double> col(ens.B);
    for (std::size_t k = 0; k < p; ++k) {
        double mean = 0.0;
        for (std::size_t b = 0; b < ens.B; ++b) {
            col[b] = ens.at(b, k);
            mean += col[b];
        }
        mean /= static_cast<double>(ens.B);
        double var = 0.0;
        for (double v : col) var += (v - mean) * (v - mean);
        var = ens.B > 1 ? var / static_cast<double>(ens.B - 1) : 0.0;
        std::sort(col.begin(), col.end());
        out[k].mean = mean;
        out[k].sd = std::sqrt(var);
        out[k].lo = empirical_quantile_sorted(col, 0.5 * (1.0 - level));
        out[k].hi = empirical_quantile_sorted(col, 0.5 * (1.0 + level));
    }
    return out;
}

BootstrapBands bootstrap_bands(const ShockDataset& ds, const BootstrapEnsemble& ens,
                               const std::vector<double>& up_grid, double level,
                               const RngState& rng) {
    if (up_grid.empty()) throw EmptyInput("bootstrap_bands requires a grid");
    const std::size_t p = static_cast<std::size_t>(ens.degree) + 1;
    FitResult base = fit_least_squares(ds, ens.degree);
    const double s_full = std::sqrt(base.s2);
    BootstrapBands out;
    out.up = up_grid;
    const std::size_t G = up_grid.size();
    out.mean_curve.resize(G);
    out.conf_lo.resize(G); out.conf_hi.resize(G);
    out.pred_lo.resize(G); out.pred_hi.resize(G);
    const double plo = 0.5 * (1.0 - level), phi = 0.5 * (1.0 + level);
    std::vector<double> curve(ens.B), noisy(ens.B);
    for (std::size_t g = 0; g < G; ++g) {
        const double up = up_grid[g];
        for (std::size_t b = 0; b < ens.B; ++b) {
            double v = 1.0, us = 0.0;
            for (std::size_t k = 0; k < p; ++k) {
                us += ens.at(b, k) * v;
                v *= up;
            }
            curve[b] = us;
        }
        double m = 0.0;
        for (double v : curve) m += v;
        out.mean_curve[g] = m / static_cast<double>(ens.B);
        RngState st = substream(rng, g);
        std::vector<double> noise = sample_std_normal(st, ens.B);
        for (std::size_t b = 0; b < ens.B; ++b) noisy[b] = curve[b] + s_full * noise[b];
        std::sort(curve.begin(), curve.end());
        std::sort(noisy.begin(), noisy.end());
        out.conf_lo[g] = empirical_quantile_sorted(curve, plo);
        out.conf_hi[g] = empirical_quantile_sorted(curve, phi);
        out.pred_lo[g] = empirical_quantile_sorted(noisy, plo);
        out.pred_hi[g] = empirical_quantile_sorted(noisy, phi);
    }
    return out;
}

SensitivityResult sensitivity_drop_max_up(const ShockDataset& ds, int degree,
                                          std::size_t B, std::size_t sample_count,
                                          const RngState& rng) {
    validate_dataset(ds);
    if (ds.n() < 4) throw ValidationError("sensitivity needs n >= 4");
    double mx = *std::max_element(ds.up.begin(), ds.up.end());
    std::size_t count = 0, at = 0;
    for (std::size_t i = 0; i < ds.n(); ++i)
        if (ds.up[i] == mx) { ++count; at = i; }
    if (count != 1)
        throw TieBreak("maximum particle velocity is attained by " +
                       std::to_string(count) + " points; drop is ambiguous");
    ShockDataset dropped;
    dropped.material = ds.material;
    std::vector<double> rho0;
    std::vector<std::string> src;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        if (i == at) continue;
        dropped.up.push_back(ds.up[i]);
        dropped.us.push_back(ds.us[i]);
        if (ds.rho0) rho0.push_back((*ds.rho0)[i]);
        if (ds.source) src.push_back((*ds.source)[i]);
    }
    if (ds.rho0) dropped.rho0 = std::move(rho0);
    if (ds.source) dropped.source = std::move(src);

    SensitivityResult r;
    r.dropped_index = at;
    r.ens_full = bootstrap_ensemble(ds, degree, B, rng);
    r.ens_dropped = bootstrap_ensemble(dropped, degree, B, substream(rng, 0x5eed));
    r.post_full = posterior_noninformative(fit_least_squares(ds, degree));
    r.post_dropped = posterior_noninformative(fit_least_squares(dropped, degree));
    if (sample_count > 0) {
        r.post_samples_full = sample_beta(r.post_full, sample_count, substream(rng, 1));
        r.post_samples_dropped =
            sample_beta(r.post_dropped, sample_count, substream(rng, 2));
    }
    return r;
}

}  // namespace shockbayes
