#pragma once

#include <span>
#include <vector>

namespace spiraldim {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
    int n = 0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// A point of a log-log cloud (natural logs).
struct LogLogPoint {
    double lx;
    double ly;
};

// OLS over the cloud with the finest and coarsest decade of lx dropped.
// Throws std::domain_error when fewer than two distinct scales remain.
LineFit fit_middle_decades(std::vector<LogLogPoint> pts,
                           double drop_low_decades = 1.0,
                           double drop_high_decades = 1.0);

// Per-bin extreme of the cloud along lx (bin width = decade / bins_per_decade).
// Returns one representative point per non-empty bin, sorted by lx.
std::vector<LogLogPoint> lower_envelope(std::span<const LogLogPoint> pts, int bins_per_decade);
std::vector<LogLogPoint> upper_envelope(std::span<const LogLogPoint> pts, int bins_per_decade);

}  // namespace spiraldim
