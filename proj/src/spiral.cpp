#include "spiraldim/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spiraldim/errors.hpp"
#include "spiraldim/quadrature.hpp"

namespace spiraldim {

double turn_lower(std::int64_t k) { return 1.0 + kTwoPi * static_cast<double>(k - 1); }
double turn_upper(std::int64_t k) { return 1.0 + kTwoPi * static_cast<double>(k); }

Turn make_turn(std::int64_t k) {
    if (k < 1) throw std::domain_error("turn index must be >= 1");
    return Turn{k, turn_lower(k), turn_upper(k)};
}

std::int64_t turn_index(double x) {
    if (!(x > 1.0)) throw std::domain_error("turn_index requires x > 1");
    auto k = static_cast<std::int64_t>(std::ceil((x - 1.0) / kTwoPi));
    if (k < 1) k = 1;
    // Settle boundary rounding against the defining inequalities.
    while (x <= turn_lower(k)) --k;
    while (x > turn_upper(k)) ++k;
    return k;
}

SpiralPoint spiral_point(const WindingFunction& phi, double x) {
    if (!(x >= 1.0)) throw std::domain_error("spiral_point requires x >= 1");
    const double r = phi(x);
    return SpiralPoint{x, r, x, r * std::cos(x), r * std::sin(x)};
}

namespace {

double speed(const WindingFunction& phi, double x) {
    return std::hypot(phi(x), phi.derivative(x));
}

}  // namespace

double turn_arclength(const WindingFunction& phi, std::int64_t k, double tol) {
    if (k < 1) throw std::domain_error("turn index must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");
    if (!phi.has_derivative()) {
        throw std::invalid_argument("arc length needs a winding function with a derivative");
    }
    const double lo = turn_lower(k);
    const double hi = turn_upper(k);
    auto f = [&](double x) { return speed(phi, std::max(x, 1.0)); };
    return integrate(f, lo, hi, QuadratureOptions{tol, 60});
}

std::vector<SpiralPoint> sample_turn(const WindingFunction& phi, std::int64_t k,
                                     double max_gap, std::size_t point_cap) {
    if (!(max_gap > 0.0)) throw std::domain_error("max_gap must be positive");
    const Turn turn = make_turn(k);

    std::vector<SpiralPoint> pts;
    double x = turn.x_lo;
    pts.push_back(spiral_point(phi, std::max(x, 1.0)));
    while (x < turn.x_hi) {
        const double v = speed(phi, std::max(x, 1.0));
        double dx = (v > 0.0) ? max_gap / v : kTwoPi;
        dx = std::min(dx, turn.x_hi - x);
        SpiralPoint next = spiral_point(phi, std::min(x + dx, turn.x_hi));
        // The chord never exceeds the arc, but the speed may grow ahead of x;
        // halve until the actual chord fits.
        const SpiralPoint& cur = pts.back();
        while (std::hypot(next.cx - cur.cx, next.cy - cur.cy) > max_gap && dx > 1e-16 * turn.x_hi) {
            dx *= 0.5;
            next = spiral_point(phi, std::min(x + dx, turn.x_hi));
        }
        x = next.x;
        pts.push_back(next);
        if (pts.size() > point_cap) {
            throw resource_error("sample_turn exceeded the configured point cap");
        }
    }
    return pts;
}

}  // namespace spiraldim
