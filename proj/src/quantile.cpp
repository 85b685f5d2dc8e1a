#include "shockbayes/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "shockbayes/errors.hpp"

namespace shockbayes {

double empirical_quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw EmptyInput("empirical_quantile of an empty list");
    if (!(p >= 0.0) || !(p <= 1.0)) throw DomainError("quantile level must be in [0, 1]");
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double h = (static_cast<double>(n) - 1.0) * p;
    auto i = static_cast<std::size_t>(std::floor(h));
    if (i >= n - 1) return sorted[n - 1];
    double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double empirical_quantile(std::span<const double> values, double p) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    return empirical_quantile_sorted(v, p);
}

}  // namespace shockbayes
