#pragma once

#include <cstdint>

namespace fgp {

struct ToleranceConfig {
    double series_radius = 0.45;    // fraction of the shortest period
    double pole_guard = 1e-6;       // fraction of the shortest period
    double invert_residual = 1e-9;
    double identity_residual = 1e-9;
    double dg_residual = 1e-8;
    double dedupe_radius = 1e-6;    // scaled by max(1, |e|_inf)
    double branch_exclusion = 1e-6; // scaled by max(1, |e|_inf)
    double certificate = 1e-9;
    int resultant_samples = 128;
    double resultant_radius = 1.0;  // sampling circle, in units of max |e_j|
    int newton_grid = 40;
    bool linear_weights = false;
    std::uint64_t seed = 20240611;
};

inline const ToleranceConfig& default_tolerances()
{
    static const ToleranceConfig cfg{};
    return cfg;
}

}  // namespace fgp
