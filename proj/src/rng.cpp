#include "shockbayes/rng.hpp"

#include <cmath>

#include "shockbayes/errors.hpp"

namespace shockbayes {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

struct Block {
    std::uint32_t v[4];
};

Block philox4x32_10(const RngState& st) {
    std::uint32_t c0 = static_cast<std::uint32_t>(st.counter);
    std::uint32_t c1 = static_cast<std::uint32_t>(st.counter >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(st.stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(st.stream >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(st.seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(st.seed >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        std::uint32_t n0 = hi1 ^ c1 ^ k0;
        std::uint32_t n1 = lo1;
        std::uint32_t n2 = hi0 ^ c3 ^ k1;
        std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return Block{{c0, c1, c2, c3}};
}

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

RngState substream(const RngState& base, std::uint64_t index) {
    return RngState{base.seed, splitmix64(base.stream) + index + 1, 0};
}

std::uint64_t next_u64(RngState& st) {
    Block b = philox4x32_10(st);
    ++st.counter;
    return (static_cast<std::uint64_t>(b.v[0]) << 32) | b.v[1];
}

double uniform01(RngState& st) {
    return static_cast<double>(next_u64(st) >> 11) * 0x1.0p-53;
}

double sample_one_normal(RngState& st) {
    Block b = philox4x32_10(st);
    ++st.counter;
    double u1 = static_cast<double>(
                    ((static_cast<std::uint64_t>(b.v[0]) << 32) | b.v[1]) >> 11) *
                0x1.0p-53;
    double u2 = static_cast<double>(
                    ((static_cast<std::uint64_t>(b.v[2]) << 32) | b.v[3]) >> 11) *
                0x1.0p-53;
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

std::vector<double> sample_std_normal(RngState& st, std::size_t k) {
    if (k < 1) throw DomainError("sample_std_normal requires k >= 1");
    std::vector<double> out;
    out.reserve(k);
    while (out.size() < k) {
        Block b = philox4x32_10(st);
        ++st.counter;
        double u1 = static_cast<double>(
                        ((static_cast<std::uint64_t>(b.v[0]) << 32) | b.v[1]) >> 11) *
                    0x1.0p-53;
        double u2 = static_cast<double>(
                        ((static_cast<std::uint64_t>(b.v[2]) << 32) | b.v[3]) >> 11) *
                    0x1.0p-53;
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925287 * u2;
        out.push_back(r * std::cos(a));
        if (out.size() < k) out.push_back(r * std::sin(a));
    }
    return out;
}

double sample_gamma(RngState& st, double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma shape must be positive");
    if (shape < 1.0) {
        double g = sample_gamma(st, shape + 1.0);
        double u = uniform01(st);
        if (u <= 0.0) u = 0x1.0p-53;
        return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = sample_one_normal(st);
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = uniform01(st);
        if (u <= 0.0) u = 0x1.0p-53;
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

double sample_chi_square(RngState& st, double nu) {
    if (!(nu >= 1.0)) throw DomainError("chi-square requires nu >= 1");
    return 2.0 * sample_gamma(st, 0.5 * nu);
}

double sample_inverse_gamma(RngState& st, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("inverse gamma requires a, b > 0");
    return b / sample_gamma(st, a);
}

}  // namespace shockbayes
