#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spiraldim/exec.hpp"
#include "spiraldim/winding_map.hpp"

namespace spiraldim {

// An empirically fitted Holder exponent with regression diagnostics.
struct HolderEstimate {
    double exponent = 0.0;
    // Largest absolute log-log deviation from the fitted envelope, including
    // a seeded random scan of off-critical pairs.
    double slope_residual = 0.0;
    std::pair<double, double> scale_range{0.0, 0.0};
    std::int64_t pair_budget = 0;
    double raw_slope = 0.0;  // fitted slope before the [*, 1] clamps
};

struct EstimatorOptions {
    std::uint64_t seed = 0;
    std::int64_t random_pairs = 20'000;
    int envelope_bins_per_decade = 4;
    // Same-ray offsets are extended beyond the caller grid until
    // delta * y^t reaches this value, where the image pair separates fully.
    double saturation = 64.0;
    int extension_per_decade = 6;
    Exec exec = Exec::parallel;
};

// Slope of log image distance against log parameter gap over the antipodal
// critical pairs (y, y*), clamped into (0, 1].
HolderEstimate estimate_forward_exponent(const WindingMap& map, std::span<const double> y_grid,
                                         const EstimatorOptions& opt = {});

// Slope of the lower envelope of log image distance against log gap over
// same-ray pairs (y, y_m), stratified by both grids and clamped to >= 1.
HolderEstimate estimate_inverse_exponent(const WindingMap& map, std::span<const double> y_grid,
                                         std::span<const double> m_grid,
                                         const EstimatorOptions& opt = {});

std::vector<double> geometric_grid(double lo, double hi, int per_decade);
std::vector<double> default_m_grid();  // 1 .. 1e4, four per decade

}  // namespace spiraldim
