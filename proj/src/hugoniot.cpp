#include "shockbayes/hugoniot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shockbayes/errors.hpp"
#include "shockbayes/quantile.hpp"

namespace shockbayes {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw DomainError("linspace needs at least 2 points");
    std::vector<double> g(count);
    double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

PVCurve rh_transform(const Vec& beta, const std::vector<double>& up_grid,
                     const InitialState& init) {
    if (up_grid.empty()) throw EmptyInput("rh_transform requires a non-empty grid");
    if (!(init.rho0 > 0.0)) throw DomainError("rho0 must be positive");
    if (init.p0 < 0.0) throw DomainError("p0 must be non-negative");
    const double v0 = 1.0 / init.rho0;
    PVCurve c;
    c.up = up_grid;
    c.us.resize(up_grid.size());
    c.v.resize(up_grid.size());
    c.p.resize(up_grid.size());
    if (init.e0) c.e = std::vector<double>(up_grid.size());
    std::string badpoints;
    for (std::size_t i = 0; i < up_grid.size(); ++i) {
        const double up = up_grid[i];
        double us = 0.0;
        for (std::size_t k = beta.size(); k-- > 0;) us = us * up + beta[k];
        if (!(us > 0.0) || !(us > up)) {
            if (!badpoints.empty()) badpoints += ", ";
            badpoints += std::to_string(i);
            continue;
        }
        c.us[i] = us;
        c.v[i] = v0 * (us - up) / us;
        c.p[i] = init.p0 + init.rho0 * us * up;
        if (init.e0)
            (*c.e)[i] = *init.e0 + 0.5 * (c.p[i] + init.p0) * (v0 - c.v[i]);
    }
    if (!badpoints.empty())
        throw UnphysicalRegion("us <= up or us <= 0 at grid indices " + badpoints);
    return c;
}

PVSampleResult sample_pv_curves(const PosteriorNIG& post, std::size_t count,
                                const std::vector<double>& up_grid,
                                const InitialState& init, const RngState& rng) {
    if (count < 1) throw DomainError("curve count must be >= 1");
    PVSampleResult out;
    out.curves.reserve(count);
    std::vector<Vec> betas = sample_beta(post, count, rng);
    for (const Vec& b : betas) {
        try {
            out.curves.push_back(rh_transform(b, up_grid, init));
        } catch (const UnphysicalRegion&) {
            ++out.rejected;
        }
    }
    if (static_cast<double>(out.rejected) >
        0.01 * static_cast<double>(count))
        throw ExcessiveRejection(std::to_string(out.rejected) + " of " +
                                 std::to_string(count) +
                                 " sampled curves were unphysical (> 1%)");
    return out;
}

PVBand pv_band(const std::vector<PVCurve>& curves, double level,
               std::size_t v_grid_size) {
    if (curves.empty()) throw EmptyInput("pv_band requires at least one curve");
    if (!(level > 0.0) || !(level < 1.0)) throw DomainError("level must be in (0, 1)");
    if (v_grid_size < 2) throw DomainError("v_grid_size must be >= 2");
    double vmin = -1e300, vmax = 1e300;
    for (const PVCurve& c : curves) {
        auto [mn, mx] = std::minmax_element(c.v.begin(), c.v.end());
        vmin = std::max(vmin, *mn);
        vmax = std::min(vmax, *mx);
    }
    if (!(vmin < vmax))
        throw EmptyIntersection("curves share no common volume range");
    std::vector<double> vg = linspace(vmin, vmax, v_grid_size);
    PVBand band;
    band.v_grid = vg;
    band.level = level;
    band.p_lo.resize(v_grid_size);
    band.p_hi.resize(v_grid_size);
    band.p_mean = std::vector<double>(v_grid_size);

    // v descends along each curve as up rises; pre-sort the few that fold.
    std::vector<std::vector<std::pair<double, double>>> sorted(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
        auto& sp = sorted[c];
        sp.resize(curves[c].v.size());
        for (std::size_t i = 0; i < sp.size(); ++i)
            sp[i] = {curves[c].v[i], curves[c].p[i]};
        std::sort(sp.begin(), sp.end());
    }
    std::vector<double> column(curves.size());
    const double plo = 0.5 * (1.0 - level), phi = 0.5 * (1.0 + level);
    for (std::size_t g = 0; g < v_grid_size; ++g) {
        const double v = vg[g];
        for (std::size_t c = 0; c < curves.size(); ++c) {
            const auto& sp = sorted[c];
            auto it = std::lower_bound(
                sp.begin(), sp.end(), std::make_pair(v, -1e300));
            double p;
            if (it == sp.begin()) {
                p = it->second;
            } else if (it == sp.end()) {
                p = (it - 1)->second;
            } else {
                auto prev = it - 1;
                double t = (v - prev->first) / (it->first - prev->first);
                p = prev->second + t * (it->second - prev->second);
            }
            column[c] = p;
        }
        std::sort(column.begin(), column.end());
        band.p_lo[g] = empirical_quantile_sorted(column, plo);
        band.p_hi[g] = empirical_quantile_sorted(column, phi);
        double m = 0.0;
        for (double p : column) m += p;
        (*band.p_mean)[g] = m / static_cast<double>(column.size());
    }
    return band;
}

}  // namespace shockbayes
