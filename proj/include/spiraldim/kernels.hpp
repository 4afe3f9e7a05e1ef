#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spiraldim/exec.hpp"
#include "spiraldim/winding_function.hpp"

namespace spiraldim::kernels {

// sum_{k = k_lo}^{k_hi} ceil(k^-p / r).  Terms are exact int64; the caller is
// responsible for checking that the total fits (see dimension.cpp).
std::int64_t cover_term_sum_serial(double p, double r, std::int64_t k_lo, std::int64_t k_hi);
std::int64_t cover_term_sum_parallel(double p, double r, std::int64_t k_lo, std::int64_t k_hi);
std::int64_t cover_term_sum(double p, double r, std::int64_t k_lo, std::int64_t k_hi, Exec exec);

// Unrounded sum_{k} k^-p / r, accumulated in fixed chunks so the result is
// independent of the thread count.
double cover_term_sum_real_serial(double p, double r, std::int64_t k_lo, std::int64_t k_hi);
double cover_term_sum_real_parallel(double p, double r, std::int64_t k_lo, std::int64_t k_hi);
double cover_term_sum_real(double p, double r, std::int64_t k_lo, std::int64_t k_hi, Exec exec);

struct Window {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
};

// Number of occupied cells of the axis-aligned grid of mesh `r`, optionally
// restricted to points inside the window.
std::int64_t occupied_cells_serial(std::span<const std::array<double, 2>> pts, double r,
                                   const std::optional<Window>& window);
std::int64_t occupied_cells_parallel(std::span<const std::array<double, 2>> pts, double r,
                                     const std::optional<Window>& window);
std::int64_t occupied_cells(std::span<const std::array<double, 2>> pts, double r,
                            const std::optional<Window>& window, Exec exec);

// Arc lengths of turns 1..K, one entry per turn, identical output for both
// variants (each turn is integrated independently).
std::vector<double> turn_lengths_serial(const WindingFunction& phi, std::int64_t K, double tol);
std::vector<double> turn_lengths_parallel(const WindingFunction& phi, std::int64_t K, double tol);
std::vector<double> turn_lengths(const WindingFunction& phi, std::int64_t K, double tol, Exec exec);

}  // namespace spiraldim::kernels
