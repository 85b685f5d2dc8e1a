#pragma once

#include <optional>
#include <vector>

#include "shockbayes/linalg.hpp"
#include "shockbayes/regression.hpp"
#include "shockbayes/rng.hpp"

namespace shockbayes {

struct InitialState {
    double rho0 = 0.0;            // g/cm^3
    double p0 = 1e-4;             // GPa (1 bar)
    std::optional<double> e0;     // kJ/g
};

// One Hugoniot curve mapped through the conservation equations:
//   V/V0 = (Us - Up)/Us,  P = P0 + rho0 Us Up,  E = E0 + (P + P0)(V0 - V)/2.
struct PVCurve {
    std::vector<double> up;  // km/s
    std::vector<double> us;  // km/s
    std::vector<double> v;   // cm^3/g
    std::vector<double> p;   // GPa
    std::optional<std::vector<double>> e;  // kJ/g
};

struct PVBand {
    std::vector<double> v_grid;  // cm^3/g, strictly increasing
    std::vector<double> p_lo;    // GPa
    std::vector<double> p_hi;
    double level = 0.0;
    std::optional<std::vector<double>> p_mean;
};

PVCurve rh_transform(const Vec& beta, const std::vector<double>& up_grid,
                     const InitialState& init);

struct PVSampleResult {
    std::vector<PVCurve> curves;
    std::size_t rejected = 0;
};

// sample_beta then rh_transform per draw; unphysical draws (us <= up or
// us <= 0 anywhere on the grid) are rejected and counted. More than 1%
// rejections raises ExcessiveRejection.
PVSampleResult sample_pv_curves(const PosteriorNIG& post, std::size_t count,
                                const std::vector<double>& up_grid,
                                const InitialState& init, const RngState& rng);

// Common volume grid over the intersection of all curve volume ranges;
// linear interpolation of each curve onto it; pointwise empirical quantiles.
PVBand pv_band(const std::vector<PVCurve>& curves, double level,
               std::size_t v_grid_size);

std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace shockbayes
