#pragma once

// Test-side oracles, deliberately independent of the library's quantile and
// least-squares paths: densities are integrated with adaptive Simpson and
// inverted by bisection; fits are recovered by coarse-to-fine grid search on
// the error sum of squares; small systems are solved by plain Gauss
// elimination.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int depth, double fa, double fm, double fb, double whole) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 1e-13 * (1.0 + std::fabs(whole)))
        return left + right;
    return simpson(f, a, m, depth - 1, fa, flm, fm, left) +
           simpson(f, m, b, depth - 1, fm, frm, fb, right);
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, 48, fa, fm, fb, whole);
}

inline double t_pdf(double x, double nu) {
    double logc = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                  0.5 * std::log(nu * M_PI);
    return std::exp(logc - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

inline double t_cdf_numeric(double x, double nu) {
    if (x < 0.0) return 1.0 - t_cdf_numeric(-x, nu);
    return 0.5 + integrate([nu](double u) { return t_pdf(u, nu); }, 0.0, x);
}

// Quantile by bisection on the numerically integrated density.
inline double t_quantile_numeric(double p, double nu) {
    double lo = -400.0, hi = 400.0;
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        if (t_cdf_numeric(m, nu) < p) lo = m; else hi = m;
        if (hi - lo < 1e-11) break;
    }
    return 0.5 * (lo + hi);
}

inline double f_pdf(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    double logc = std::lgamma(0.5 * (d1 + d2)) - std::lgamma(0.5 * d1) -
                  std::lgamma(0.5 * d2) + 0.5 * d1 * std::log(d1 / d2);
    return std::exp(logc + (0.5 * d1 - 1.0) * std::log(x) -
                    0.5 * (d1 + d2) * std::log1p(d1 * x / d2));
}

inline double f_cdf_numeric(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    return integrate([d1, d2](double u) { return f_pdf(u, d1, d2); }, 0.0, x);
}

inline double f_quantile_numeric(double p, double d1, double d2) {
    double lo = 0.0, hi = 1.0;
    while (f_cdf_numeric(hi, d1, d2) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        if (f_cdf_numeric(m, d1, d2) < p) lo = m; else hi = m;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

// Coarse-to-fine grid minimization of the error sum of squares over
// (intercept, slope).
inline std::pair<double, double> grid_search_line(const std::vector<double>& x,
                                                  const std::vector<double>& y) {
    double c_lo = -50.0, c_hi = 50.0, s_lo = -50.0, s_hi = 50.0;
    double best_c = 0.0, best_s = 0.0;
    for (int round = 0; round < 24; ++round) {
        double best = 1e300;
        const int K = 41;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) {
                double c = c_lo + (c_hi - c_lo) * i / (K - 1.0);
                double s = s_lo + (s_hi - s_lo) * j / (K - 1.0);
                double sse = 0.0;
                for (std::size_t r = 0; r < x.size(); ++r) {
                    double d = y[r] - c - s * x[r];
                    sse += d * d;
                }
                if (sse < best) { best = sse; best_c = c; best_s = s; }
            }
        double cw = (c_hi - c_lo) / (K - 1.0), sw = (s_hi - s_lo) / (K - 1.0);
        c_lo = best_c - 2.0 * cw; c_hi = best_c + 2.0 * cw;
        s_lo = best_s - 2.0 * sw; s_hi = best_s + 2.0 * sw;
    }
    return {best_c, best_s};
}

// Plain Gauss elimination with partial pivoting.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        if (a[col][col] == 0.0) throw std::runtime_error("singular system");
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[ii][k] * x[k];
        x[ii] = s / a[ii][ii];
    }
    return x;
}

}  // namespace oracle
