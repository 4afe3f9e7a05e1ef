#include "spiraldim/holder_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "spiraldim/regression.hpp"
#include "spiraldim/spiral.hpp"

namespace spiraldim {

namespace {

void validate_grid(std::span<const double> y_grid) {
    if (y_grid.size() < 8) throw std::domain_error("y grid needs at least 8 points");
    double lo = y_grid[0], hi = y_grid[0];
    for (double y : y_grid) {
        if (!(y > 0.0 && y < 1.0)) throw std::domain_error("y grid must lie in (0, 1)");
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    if (!(hi / lo >= 1e4 * (1.0 - 1e-9))) {
        throw std::domain_error("y grid must span at least 4 decades");
    }
    if (lo == hi) throw std::domain_error("y grid is degenerate");
}

struct PairRequest {
    std::size_t anchor;
    double turns;
    double frac;
};

// Evaluate requests against precomputed anchors; results keep request order.
std::vector<PairGeometry> evaluate_pairs(const WindingMap& map,
                                         const std::vector<WindingMap::Anchor>& anchors,
                                         const std::vector<PairRequest>& reqs, Exec exec) {
    std::vector<PairGeometry> out(reqs.size());
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(reqs.size()); ++i) {
        const auto& rq = reqs[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] =
            map.pair_from_anchor(anchors[rq.anchor], rq.turns, rq.frac);
    }
    return out;
}

std::vector<WindingMap::Anchor> make_anchors(const WindingMap& map,
                                             std::span<const double> y_grid, Exec exec) {
    std::vector<WindingMap::Anchor> anchors(y_grid.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(y_grid.size()); ++i) {
        anchors[static_cast<std::size_t>(i)] = map.anchor(y_grid[static_cast<std::size_t>(i)]);
    }
    return anchors;
}

std::pair<double, double> grid_range(std::span<const double> y_grid) {
    double lo = y_grid[0], hi = y_grid[0];
    for (double y : y_grid) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    return {lo, hi};
}

// Random off-critical offsets: anchors log-uniform over the grid range,
// offsets log-uniform over [pi, pi * 10^spread].
std::vector<PairRequest> random_requests(std::mt19937_64& rng, std::size_t n_anchors,
                                         std::int64_t budget, double spread_decades) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PairRequest> reqs;
    reqs.reserve(static_cast<std::size_t>(budget));
    for (std::int64_t i = 0; i < budget; ++i) {
        const auto a = static_cast<std::size_t>(unit(rng) * static_cast<double>(n_anchors));
        const double delta =
            0.5 * kTwoPi * std::pow(10.0, spread_decades * unit(rng));
        const double turns = std::floor(delta / kTwoPi);
        const double frac = delta - kTwoPi * turns;
        reqs.push_back({std::min(a, n_anchors - 1), turns, frac});
    }
    return reqs;
}

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0 && lo < hi)) throw std::domain_error("need 0 < lo < hi");
    if (per_decade < 1) throw std::domain_error("need at least one point per decade");
    const double decades = std::log10(hi / lo);
    const int n = std::max(1, static_cast<int>(std::round(decades * per_decade)));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        out.push_back(lo * std::pow(10.0, decades * i / n));
    }
    return out;
}

std::vector<double> default_m_grid() {
    std::vector<double> out;
    double last = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double m = std::round(std::pow(10.0, i / 4.0));
        if (m != last) out.push_back(m);
        last = m;
    }
    return out;
}

HolderEstimate estimate_forward_exponent(const WindingMap& map, std::span<const double> y_grid,
                                         const EstimatorOptions& opt) {
    validate_grid(y_grid);
    const auto anchors = make_anchors(map, y_grid, opt.exec);

    std::vector<PairRequest> reqs;
    reqs.reserve(y_grid.size());
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        reqs.push_back({i, 0.0, 0.5 * kTwoPi});  // antipodal pair
    }
    const auto crit = evaluate_pairs(map, anchors, reqs, opt.exec);

    std::vector<LogLogPoint> pts;
    pts.reserve(crit.size());
    for (const auto& g : crit) {
        if (g.valid) pts.push_back({std::log(g.param_gap), std::log(g.image_dist)});
    }
    const LineFit fit = fit_middle_decades(pts);

    // Envelope constant: the largest critical quotient against the fitted slope.
    double env_intercept = -1e300;
    for (const auto& q : pts) {
        env_intercept = std::max(env_intercept, q.ly - fit.slope * q.lx);
    }

    // Random off-critical pairs (x < y*): their quotient must stay under the
    // critical envelope; report the worst excess in the residual.
    std::mt19937_64 rng(opt.seed);
    const auto scan = random_requests(rng, anchors.size(), opt.random_pairs, 12.0);
    const auto scanned = evaluate_pairs(map, anchors, scan, opt.exec);
    double worst = 0.0;
    std::int64_t budget = static_cast<std::int64_t>(crit.size());
    for (const auto& g : scanned) {
        if (!g.valid) continue;
        ++budget;
        const double excess =
            std::log(g.image_dist) - (fit.slope * std::log(g.param_gap) + env_intercept);
        worst = std::max(worst, excess);
    }

    HolderEstimate est;
    est.raw_slope = fit.slope;
    est.exponent = std::min(fit.slope, 1.0);
    est.slope_residual = std::max(fit.max_abs_residual, worst);
    est.scale_range = grid_range(y_grid);
    est.pair_budget = budget;
    return est;
}

HolderEstimate estimate_inverse_exponent(const WindingMap& map, std::span<const double> y_grid,
                                         std::span<const double> m_grid,
                                         const EstimatorOptions& opt) {
    validate_grid(y_grid);
    if (m_grid.size() < 2) throw std::domain_error("m grid needs at least two entries");
    double m_lo = m_grid[0], m_hi = m_grid[0];
    for (double m : m_grid) {
        if (!(m >= 1.0)) throw std::domain_error("m grid entries must be >= 1");
        m_lo = std::min(m_lo, m);
        m_hi = std::max(m_hi, m);
    }
    if (!(m_hi / m_lo >= 1e2 * (1.0 - 1e-9))) {
        throw std::domain_error("m grid must span at least 2 decades");
    }

    const auto anchors = make_anchors(map, y_grid, opt.exec);
    const auto [y_min, y_max] = grid_range(y_grid);

    std::vector<PairRequest> reqs;
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        for (double m : m_grid) {
            reqs.push_back({i, m, 0.0});
        }
        // Extend beyond the caller grid until the pair separates fully, so the
        // envelope's coarse branch is reachable from every anchor.
        double m_sat;
        if (map.kind() == WindingMap::Kind::twist) {
            m_sat = opt.saturation * std::pow(y_grid[i], -map.t()) / kTwoPi;
        } else {
            m_sat = 1e15;
        }
        const double step = std::pow(10.0, 1.0 / opt.extension_per_decade);
        for (double m = m_hi * step; m < m_sat; m *= step) {
            reqs.push_back({i, std::floor(m), 0.0});
        }
        if (m_sat > m_hi) reqs.push_back({i, std::floor(m_sat), 0.0});
    }
    const auto cloud = evaluate_pairs(map, anchors, reqs, opt.exec);

    // Keep the envelope to gaps at the anchor scales; far below them the
    // cloud follows the partially separated branch.
    const double lx_lo = std::log(y_min);
    const double lx_hi = std::log(y_max);
    std::vector<LogLogPoint> pts;
    for (const auto& g : cloud) {
        if (!g.valid) continue;
        const double lx = std::log(g.param_gap);
        if (lx < lx_lo || lx > lx_hi) continue;
        pts.push_back({lx, std::log(g.image_dist)});
    }
    const auto env = lower_envelope(pts, opt.envelope_bins_per_decade);
    const LineFit fit = fit_middle_decades(env);

    double env_intercept = 1e300;
    for (const auto& q : env) {
        env_intercept = std::min(env_intercept, q.ly - fit.slope * q.lx);
    }

    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    const auto scan = random_requests(rng, anchors.size(), opt.random_pairs, 12.0);
    const auto scanned = evaluate_pairs(map, anchors, scan, opt.exec);
    double worst = 0.0;
    std::int64_t budget = static_cast<std::int64_t>(pts.size());
    for (const auto& g : scanned) {
        if (!g.valid) continue;
        ++budget;
        const double lx = std::log(g.param_gap);
        if (lx < lx_lo || lx > lx_hi) continue;
        const double shortfall =
            (fit.slope * lx + env_intercept) - std::log(g.image_dist);
        worst = std::max(worst, shortfall);
    }

    HolderEstimate est;
    est.raw_slope = fit.slope;
    est.exponent = std::max(fit.slope, 1.0);
    est.slope_residual = std::max(fit.max_abs_residual, worst);
    est.scale_range = {y_min, y_max};
    est.pair_budget = budget;
    return est;
}

}  // namespace spiraldim
