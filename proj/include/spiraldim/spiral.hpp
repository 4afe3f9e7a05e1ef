#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spiraldim/winding_function.hpp"

namespace spiraldim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// A point phi(x) e^{ix} on a spiral.  The argument is kept unreduced
// (arg == x); reduction mod 2pi happens only where angles are compared.
struct SpiralPoint {
    double x;
    double radius;
    double arg;
    double cx;
    double cy;
};

// Full turn k: parameters in (1 + 2pi (k-1), 1 + 2pi k].
struct Turn {
    std::int64_t k;
    double x_lo;
    double x_hi;
};

double turn_lower(std::int64_t k);
double turn_upper(std::int64_t k);
Turn make_turn(std::int64_t k);

// The unique k with x in (1 + 2pi(k-1), 1 + 2pi k]; requires x > 1.
std::int64_t turn_index(double x);

// The point with radius phi(x) and argument x; requires x >= 1.
SpiralPoint spiral_point(const WindingFunction& phi, double x);

// Arc length of turn k via the polar integrand sqrt(phi^2 + phi'^2),
// adaptive quadrature with absolute tolerance `tol`.
double turn_arclength(const WindingFunction& phi, std::int64_t k, double tol = 1e-10);

// Points along turn k with consecutive planar distance <= max_gap; the first
// and last points sit on the turn boundaries.  Throws resource_error if more
// than point_cap points would be needed.
std::vector<SpiralPoint> sample_turn(const WindingFunction& phi, std::int64_t k,
                                     double max_gap, std::size_t point_cap = 50'000'000);

}  // namespace spiraldim
