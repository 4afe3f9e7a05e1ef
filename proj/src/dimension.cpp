#include "spiraldim/dimension.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "spiraldim/errors.hpp"
#include "spiraldim/regression.hpp"
#include "spiraldim/spiral.hpp"

namespace spiraldim {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

// Largest admissible analytic count; beyond this the int64 arithmetic of the
// term sums is at risk.
constexpr double kCountCap = 4.0e18;

std::int64_t checked_ceil(double v) {
    if (!(v < kCountCap)) throw resource_error("covering count overflows the integer width");
    return static_cast<std::int64_t>(std::ceil(v));
}

// Resolve "the unique integer n with n^-e <= bound < (n-1)^-e" robustly
// against pow rounding.
std::int64_t unique_cutoff(double e, double bound) {
    double guess = std::pow(bound, -1.0 / e);
    if (!(guess < 9.0e17)) throw resource_error("turn cutoff exceeds the supported range");
    auto n = static_cast<std::int64_t>(std::llround(guess));
    if (n < 1) n = 1;
    auto below = [&](std::int64_t k) {  // k^-e <= bound
        return std::pow(static_cast<double>(k), -e) <= bound;
    };
    while (n > 1 && below(n - 1)) --n;
    while (!below(n)) ++n;
    return n;
}

}  // namespace

std::int64_t tight_turn_cutoff(double p, double r) {
    require(p > 0.0, "p must be positive");
    require(r > 0.0 && r < 1.0, "r must lie in (0, 1)");
    return unique_cutoff(p + 1.0, r);
}

std::int64_t window_turn_cutoff(double p, double r, double theta) {
    require(p > 0.0, "p must be positive");
    require(r > 0.0 && r < 1.0, "r must lie in (0, 1)");
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    return unique_cutoff(p, std::pow(r, theta));
}

CoverRecord cover_count_analytic(double p, double r, Exec exec) {
    const std::int64_t K = tight_turn_cutoff(p, r);
    const double inner = std::pow(static_cast<double>(K), -p) / r;
    const std::int64_t central = checked_ceil(inner * inner);

    // Estimate the term sum before computing it exactly.
    double harmonic;
    if (p < 1.0) {
        harmonic = std::pow(static_cast<double>(K), 1.0 - p) / (1.0 - p) + 1.0;
    } else if (p > 1.0) {
        harmonic = 1.0 + 1.0 / (p - 1.0);
    } else {
        harmonic = std::log(static_cast<double>(K)) + 2.0;
    }
    const double sum_bound = harmonic / r + static_cast<double>(K);
    if (!(sum_bound < kCountCap)) throw resource_error("covering count overflows the integer width");

    CoverRecord rec;
    rec.r = r;
    rec.count = central + kernels::cover_term_sum(p, r, 1, K, exec);
    rec.method = CoverMethod::analytic;
    return rec;
}

namespace {

// upper bound for sum_{k=l}^{L} k^-p: first term plus the integral
double term_sum_bound(double p, double l, double L) {
    double integral;
    if (p == 1.0) {
        integral = std::log(L / l);
    } else if (p > 1.0) {
        integral = (std::pow(l, 1.0 - p) - std::pow(L, 1.0 - p)) / (p - 1.0);
    } else {
        integral = (std::pow(L, 1.0 - p) - std::pow(l, 1.0 - p)) / (1.0 - p);
    }
    return std::pow(l, -p) + integral;
}

}  // namespace

CoverRecord local_cover_count_analytic(double p, double r, double theta, Exec exec) {
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    if (theta >= phase_transition(p)) {
        throw std::domain_error(
            "theta at or past the phase transition: the window is fully wound, use window_block_count");
    }
    const std::int64_t L = tight_turn_cutoff(p, r);
    const std::int64_t l = window_turn_cutoff(p, r, theta);
    const double inner = std::pow(static_cast<double>(L), -p) / r;
    const std::int64_t central = checked_ceil(inner * inner);

    const double sum_bound =
        term_sum_bound(p, static_cast<double>(l), static_cast<double>(L)) / r +
        static_cast<double>(std::max<std::int64_t>(L - l + 1, 0)) + inner * inner;
    if (!(sum_bound < kCountCap)) throw resource_error("covering count overflows the integer width");

    CoverRecord rec;
    rec.r = r;
    rec.theta = theta;
    rec.count = central + (l <= L ? kernels::cover_term_sum(p, r, l, L, exec) : 0);
    rec.method = CoverMethod::analytic;
    return rec;
}

CoverRecord window_block_count(double r, double theta) {
    require(r > 0.0 && r < 1.0, "r must lie in (0, 1)");
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    const double side = std::pow(r, theta - 1.0);
    CoverRecord rec;
    rec.r = r;
    rec.theta = theta;
    rec.count = checked_ceil(side * side);
    rec.method = CoverMethod::analytic;
    return rec;
}

CoverRecord grid_cover_count(std::span<const std::array<double, 2>> points, double r,
                             std::optional<kernels::Window> window, Exec exec) {
    require(r > 0.0, "mesh must be positive");
    if (points.size() < 2) throw std::invalid_argument("grid_cover_count needs a sampled curve");
    const double gap_cap = r / 10.0 * (1.0 + 1e-9);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double dx = points[i][0] - points[i - 1][0];
        const double dy = points[i][1] - points[i - 1][1];
        if (std::hypot(dx, dy) > gap_cap) {
            throw std::invalid_argument("points must be sampled with gap <= r/10");
        }
    }
    if (window && !(window->radius >= r)) {
        throw std::domain_error("window radius must be >= the mesh");
    }
    CoverRecord rec;
    rec.r = r;
    rec.count = kernels::occupied_cells(points, r, window, exec);
    rec.method = CoverMethod::grid;
    return rec;
}

double box_dimension(double p) {
    require(p > 0.0, "p must be positive");
    return std::max(2.0 / (1.0 + p), 1.0);
}

double assouad_spectrum(double p, double theta) {
    require(p > 0.0, "p must be positive");
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    if (p < 1.0) {
        return std::min(2.0 / ((1.0 + p) * (1.0 - theta)), 2.0);
    }
    return std::min(1.0 + theta / (p * (1.0 - theta)), 2.0);
}

double phase_transition(double p) {
    require(p > 0.0, "p must be positive");
    return p / (1.0 + p);
}

ClassicalDimensions classical_dimensions(double p) {
    require(p > 0.0, "p must be positive");
    return ClassicalDimensions{1.0, 1.0, 2.0, 2.0};
}

std::vector<double> geometric_scales(double r_min, double r_max, int per_decade) {
    require(r_min > 0.0 && r_min < r_max, "need 0 < r_min < r_max");
    require(per_decade >= 1, "need at least one point per decade");
    const double decades = std::log10(r_max / r_min);
    const int n = static_cast<int>(std::round(decades * per_decade));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        out.push_back(r_min * std::pow(10.0, decades * i / n));
    }
    return out;
}

std::vector<std::array<double, 2>> sampled_spiral(double p, double r_min, std::size_t point_cap,
                                                  Exec exec) {
    const std::int64_t k_max = 4 * tight_turn_cutoff(p, r_min);
    const WindingFunction phi = WindingFunction::polynomial(p);
    const double gap = r_min / 10.0;

    // Budget check up front, before any allocation.
    const auto lengths = kernels::turn_lengths(phi, k_max, 1e-8, exec);
    double length_total = 0.0;
    for (double v : lengths) length_total += v;
    const double predicted = 1.2 * length_total / gap + 2.0 * static_cast<double>(k_max);
    if (!(predicted < static_cast<double>(point_cap))) {
        throw resource_error("sampled spiral exceeds the point cap");
    }

    std::vector<std::vector<SpiralPoint>> per_turn(static_cast<std::size_t>(k_max));
    std::atomic_flag overflow = ATOMIC_FLAG_INIT;
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
    for (std::int64_t k = 1; k <= k_max; ++k) {
        if (overflow.test()) continue;
        try {
            per_turn[static_cast<std::size_t>(k - 1)] = sample_turn(phi, k, gap, point_cap);
        } catch (const resource_error&) {
            overflow.test_and_set();
        }
    }
    if (overflow.test()) throw resource_error("sampled spiral exceeds the point cap");

    std::size_t total = 0;
    for (const auto& v : per_turn) total += v.size();
    if (total > point_cap) throw resource_error("sampled spiral exceeds the point cap");

    std::vector<std::array<double, 2>> pts;
    pts.reserve(total);
    for (const auto& v : per_turn) {
        for (const auto& sp : v) pts.push_back({sp.cx, sp.cy});
    }
    return pts;
}

namespace {

// Unrounded analytic count values; the estimators fit these so that the
// ceiling convention cannot quantize slopes when counts are small (wound
// windows at theta near 1).
double cover_value(double p, double r, Exec exec) {
    const std::int64_t K = tight_turn_cutoff(p, r);
    const double inner = std::pow(static_cast<double>(K), -p) / r;
    return inner * inner + kernels::cover_term_sum_real(p, r, 1, K, exec);
}

double window_block_value(double r, double theta) {
    const double side = std::pow(r, theta - 1.0);
    return side * side;
}

double local_cover_value(double p, double r, double theta, Exec exec) {
    if (theta >= phase_transition(p)) return window_block_value(r, theta);
    const std::int64_t L = tight_turn_cutoff(p, r);
    const std::int64_t l = window_turn_cutoff(p, r, theta);
    const double inner = std::pow(static_cast<double>(L), -p) / r;
    return inner * inner + (l <= L ? kernels::cover_term_sum_real(p, r, l, L, exec) : 0.0);
}

DimensionEstimate fit_counts(const std::vector<double>& lx, const std::vector<double>& ly,
                             double closed, double r_lo, double r_hi) {
    std::vector<LogLogPoint> pts;
    pts.reserve(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) pts.push_back({lx[i], ly[i]});
    const LineFit fit = fit_middle_decades(std::move(pts));
    DimensionEstimate est;
    est.value = fit.slope;
    est.scale_range = {r_lo, r_hi};
    est.residual = fit.max_abs_residual;
    est.closed_form = closed;
    return est;
}

}  // namespace

DimensionEstimate estimate_box_dimension(double p, std::span<const double> r_grid,
                                         CoverMethod method, Exec exec) {
    require(r_grid.size() >= 2, "scale grid needs at least two scales");
    std::vector<double> lx, ly;
    lx.reserve(r_grid.size());
    ly.reserve(r_grid.size());

    if (method == CoverMethod::analytic) {
        // Scales are independent; parallelism lives inside the term sums.
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            lx.push_back(-std::log(r_grid[i]));
            ly.push_back(std::log(cover_value(p, r_grid[i], exec)));
        }
    } else {
        double r_min = r_grid[0];
        for (double r : r_grid) r_min = std::min(r_min, r);
        const auto pts = sampled_spiral(p, r_min, 50'000'000, exec);
        for (double r : r_grid) {
            const auto rec = grid_cover_count(pts, r, std::nullopt, exec);
            lx.push_back(-std::log(r));
            ly.push_back(std::log(static_cast<double>(rec.count)));
        }
    }

    double r_lo = r_grid[0], r_hi = r_grid[0];
    for (double r : r_grid) {
        r_lo = std::min(r_lo, r);
        r_hi = std::max(r_hi, r);
    }
    return fit_counts(lx, ly, box_dimension(p), r_lo, r_hi);
}

DimensionEstimate estimate_spectrum(double p, double theta, std::span<const double> r_grid,
                                    CoverMethod method, Exec exec) {
    require(r_grid.size() >= 2, "scale grid needs at least two scales");
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    const bool wound = theta >= phase_transition(p);

    std::vector<double> lx, ly;
    lx.reserve(r_grid.size());
    ly.reserve(r_grid.size());

    std::optional<std::vector<std::array<double, 2>>> pts;
    if (method == CoverMethod::grid) {
        if (wound) {
            throw std::domain_error(
                "grid spectrum estimates are supported before the phase transition only");
        }
        double r_min = r_grid[0];
        for (double r : r_grid) r_min = std::min(r_min, r);
        pts = sampled_spiral(p, r_min, 50'000'000, exec);
    }

    for (double r : r_grid) {
        double count;
        if (method == CoverMethod::analytic) {
            count = local_cover_value(p, r, theta, exec);
        } else {
            kernels::Window w{0.0, 0.0, std::pow(r, theta)};
            count = static_cast<double>(grid_cover_count(*pts, r, w, exec).count);
        }
        lx.push_back((1.0 - theta) * (-std::log(r)));
        ly.push_back(std::log(count));
    }

    double r_lo = r_grid[0], r_hi = r_grid[0];
    for (double r : r_grid) {
        r_lo = std::min(r_lo, r);
        r_hi = std::max(r_hi, r);
    }
    return fit_counts(lx, ly, assouad_spectrum(p, theta), r_lo, r_hi);
}

LengthReport length_classification(double p, std::int64_t K, Exec exec) {
    require(p > 0.0, "p must be positive");
    require(K >= 2, "K must be >= 2");
    const WindingFunction phi = WindingFunction::polynomial(p);
    const auto lengths = kernels::turn_lengths(phi, K, 1e-12, exec);
    double sum = 0.0;
    for (double v : lengths) sum += v;  // fixed order: deterministic output

    LengthReport rep;
    rep.partial_sum = sum;
    rep.verdict = p > 1.0 ? LengthVerdict::finite : LengthVerdict::infinite;
    rep.last_increment = lengths.back();
    if (p == 1.0) {
        rep.growth_ratio = sum / std::log(static_cast<double>(K));
    } else if (p < 1.0) {
        rep.growth_ratio = sum / std::pow(static_cast<double>(K), 1.0 - p);
    } else {
        rep.growth_ratio = sum;
    }
    return rep;
}

}  // namespace spiraldim
