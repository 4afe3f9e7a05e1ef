#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spiraldim/exec.hpp"
#include "spiraldim/kernels.hpp"

namespace spiraldim {

enum class CoverMethod { analytic, grid };

// One covering-number measurement at scale r (optionally inside the window
// of radius r^theta around the spiral's limit point).
struct CoverRecord {
    double r = 0.0;
    std::optional<double> theta;
    std::int64_t count = 0;
    CoverMethod method = CoverMethod::analytic;
};

struct DimensionEstimate {
    double value = 0.0;
    std::pair<double, double> scale_range{0.0, 0.0};
    double residual = 0.0;
    double closed_form = 0.0;
};

// The unique k with k^-(p+1) <= r < (k-1)^-(p+1): turns beyond k(r) are
// wound tighter than r.
std::int64_t tight_turn_cutoff(double p, double r);

// The unique l with l^-p <= r^theta < (l-1)^-p: the first turn inside the
// window of radius r^theta.
std::int64_t window_turn_cutoff(double p, double r, double theta);

// N_r of the whole spiral: ceil((k(r)^-p / r)^2) + sum_{k<=k(r)} ceil(k^-p / r).
CoverRecord cover_count_analytic(double p, double r, Exec exec = Exec::parallel);

// N_r of B(0, r^theta) cap spiral, valid before the phase transition
// (theta < p/(1+p)); beyond it the window is fully wound and
// window_block_count applies instead.
CoverRecord local_cover_count_analytic(double p, double r, double theta,
                                       Exec exec = Exec::parallel);

// (r^theta / r)^2 cells for a fully wound window.
CoverRecord window_block_count(double r, double theta);

// Brute-force cover count of a sampled point set.  Points must be sampled
// with consecutive gap <= r/10 (checked).
CoverRecord grid_cover_count(std::span<const std::array<double, 2>> points, double r,
                             std::optional<kernels::Window> window = std::nullopt,
                             Exec exec = Exec::parallel);

double box_dimension(double p);                      // 2/(1+p) v 1
double assouad_spectrum(double p, double theta);     // closed form, both branches
double phase_transition(double p);                   // p/(1+p)

struct ClassicalDimensions {
    double hausdorff;
    double packing;
    double assouad;
    double quasi_assouad;
};
ClassicalDimensions classical_dimensions(double p);  // (1, 1, 2, 2)

std::vector<double> geometric_scales(double r_min, double r_max, int per_decade);

// Points on the truncated spiral for mesh-r oracles: turns 1..4*k(r_min),
// sampled at gap r_min/10.
std::vector<std::array<double, 2>> sampled_spiral(double p, double r_min,
                                                  std::size_t point_cap = 50'000'000,
                                                  Exec exec = Exec::parallel);

DimensionEstimate estimate_box_dimension(double p, std::span<const double> r_grid,
                                         CoverMethod method, Exec exec = Exec::parallel);

DimensionEstimate estimate_spectrum(double p, double theta, std::span<const double> r_grid,
                                    CoverMethod method, Exec exec = Exec::parallel);

enum class LengthVerdict { finite, infinite };

struct LengthReport {
    double partial_sum = 0.0;
    LengthVerdict verdict = LengthVerdict::finite;
    // partial_sum normalized by the p-appropriate growth law:
    // log K for p = 1, K^{1-p} for p < 1, and 1 (the plain sum) for p > 1.
    double growth_ratio = 0.0;
    double last_increment = 0.0;  // arc length of turn K
};

LengthReport length_classification(double p, std::int64_t K, Exec exec = Exec::parallel);

}  // namespace spiraldim
