#pragma once

#include <span>

namespace shockbayes {

// Order-statistic quantile with linear interpolation at index h = (n-1)p.
// Input need not be sorted.
double empirical_quantile(std::span<const double> values, double p);

// Same, for data the caller has already sorted ascending.
double empirical_quantile_sorted(std::span<const double> sorted, double p);

}  // namespace shockbayes
