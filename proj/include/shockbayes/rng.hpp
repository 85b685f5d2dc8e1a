#pragma once

#include <cstdint>
#include <vector>

namespace shockbayes {

// Counter-based generator state (Philox 4x32-10). Identical
// (seed, stream, counter) triples reproduce identical output on any host;
// distinct streams are statistically independent. Batch operations assign
// one child stream per item so results do not depend on evaluation order
// or worker count.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;
};

// Child state for item `index` of a batch rooted at `base`.
RngState substream(const RngState& base, std::uint64_t index);

// One 64-bit word; advances the counter.
std::uint64_t next_u64(RngState& st);

// Uniform on [0, 1).
double uniform01(RngState& st);

// k i.i.d. standard normal draws (Box-Muller, pairwise consumption).
std::vector<double> sample_std_normal(RngState& st, std::size_t k);
double sample_one_normal(RngState& st);

// Gamma(shape, scale=1), shape > 0. Marsaglia-Tsang for shape >= 1 with the
// power-of-uniform boost below 1.
double sample_gamma(RngState& st, double shape);

// Chi-square with nu >= 1 degrees of freedom (gamma(nu/2, scale 2)).
double sample_chi_square(RngState& st, double nu);

// Inverse gamma IG(a, b): b divided by a gamma(a, 1) draw.
double sample_inverse_gamma(RngState& st, double a, double b);

}  // namespace shockbayes
