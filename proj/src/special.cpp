#include "shockbayes/special.hpp"

#include <cmath>
#include <limits>

#include "shockbayes/errors.hpp"

namespace shockbayes {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double eps = std::numeric_limits<double>::epsilon();
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 10.0 * eps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta requires a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(lnfront);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double incomplete_beta_inv(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta_inv requires a, b > 0");
    if (p < 0.0 || p > 1.0) throw DomainError("incomplete_beta_inv requires p in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    double x = 0.5;
    // crude but monotone start via a few bisections
    for (int i = 0; i < 10; ++i) {
        if (incomplete_beta(a, b, x) < p) lo = x; else hi = x;
        x = 0.5 * (lo + hi);
    }
    const double lnbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    for (int it = 0; it < 200; ++it) {
        double f = incomplete_beta(a, b, x) - p;
        if (f > 0.0) hi = x; else lo = x;
        if (std::fabs(f) <= 1e-12) {
            // one extra polished step when the derivative is usable
            double lnpdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lnbeta;
            double df = std::exp(lnpdf);
            if (df > 0.0 && std::isfinite(df)) {
                double step = f / df;
                double cand = x - step;
                if (cand > lo && cand < hi) x = cand;
            }
            return x;
        }
        double lnpdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lnbeta;
        double df = std::exp(lnpdf);
        double cand = (df > 0.0 && std::isfinite(df)) ? x - f / df : 0.5 * (lo + hi);
        if (!(cand > lo) || !(cand < hi)) cand = 0.5 * (lo + hi);
        x = cand;
    }
    return x;
}

double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw DomainError("student_t_cdf requires nu > 0");
    if (x == 0.0) return 0.5;
    double ib = incomplete_beta(0.5 * nu, 0.5, nu / (nu + x * x));
    return x > 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double student_t_pdf(double x, double nu) {
    double lognorm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                     0.5 * std::log(nu * 3.14159265358979323846);
    return std::exp(lognorm - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

double student_t_quantile(double p, double nu) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("t quantile requires 0 < p < 1");
    if (!(nu >= 1.0)) throw DomainError("t quantile requires nu >= 1");
    if (p == 0.5) return 0.0;
    double pp = 2.0 * std::min(p, 1.0 - p);
    double x = incomplete_beta_inv(0.5 * nu, 0.5, pp);
    double t = std::sqrt(nu * (1.0 - x) / x);
    return p < 0.5 ? -t : t;
}

double f_cdf(double x, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("f_cdf requires positive dof");
    if (x <= 0.0) return 0.0;
    return incomplete_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

double f_quantile(double p, double d1, double d2) {
    if (!(p >= 0.0) || !(p < 1.0)) throw DomainError("F quantile requires 0 <= p < 1");
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("F quantile requires positive dof");
    if (p == 0.0) return 0.0;
    double x = incomplete_beta_inv(0.5 * d1, 0.5 * d2, p);
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    return d2 * x / (d1 * (1.0 - x));
}

double inverse_gamma_pdf(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("inverse_gamma_pdf requires a, b > 0");
    if (x <= 0.0) return 0.0;
    return std::exp(a * std::log(b) - std::lgamma(a) - (a + 1.0) * std::log(x) - b / x);
}

}  // namespace shockbayes
