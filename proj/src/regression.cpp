#include "spiraldim/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace spiraldim {

namespace {
constexpr double kLn10 = 2.302585092994045684;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::domain_error("fit_line needs at least two points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::domain_error("fit_line needs two distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n = static_cast<int>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.max_abs_residual =
            std::max(fit.max_abs_residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    }
    return fit;
}

LineFit fit_middle_decades(std::vector<LogLogPoint> pts, double drop_low_decades,
                           double drop_high_decades) {
    if (pts.size() < 2) throw std::domain_error("log-log fit needs at least two points");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        lo = std::min(lo, p.lx);
        hi = std::max(hi, p.lx);
    }
    const double cut_lo = lo + drop_low_decades * kLn10;
    const double cut_hi = hi - drop_high_decades * kLn10;
    std::vector<double> xs, ys;
    if (cut_lo < cut_hi) {
        for (const auto& p : pts) {
            if (p.lx >= cut_lo && p.lx <= cut_hi) {
                xs.push_back(p.lx);
                ys.push_back(p.ly);
            }
        }
    }
    if (xs.size() < 2) {
        // Not enough room to drop whole decades; fall back to the full cloud.
        xs.clear();
        ys.clear();
        for (const auto& p : pts) {
            xs.push_back(p.lx);
            ys.push_back(p.ly);
        }
    }
    return fit_line(xs, ys);
}

namespace {

std::vector<LogLogPoint> envelope(std::span<const LogLogPoint> pts, int bins_per_decade, bool lower) {
    if (bins_per_decade < 1) throw std::domain_error("bins_per_decade must be >= 1");
    const double bin_w = kLn10 / bins_per_decade;
    std::map<long long, LogLogPoint> best;
    for (const auto& p : pts) {
        const auto bin = static_cast<long long>(std::floor(p.lx / bin_w));
        auto it = best.find(bin);
        if (it == best.end() || (lower ? p.ly < it->second.ly : p.ly > it->second.ly)) {
            best[bin] = p;
        }
    }
    std::vector<LogLogPoint> out;
    out.reserve(best.size());
    for (const auto& [bin, p] : best) out.push_back(p);
    return out;
}

}  // namespace

std::vector<LogLogPoint> lower_envelope(std::span<const LogLogPoint> pts, int bins_per_decade) {
    return envelope(pts, bins_per_decade, true);
}

std::vector<LogLogPoint> upper_envelope(std::span<const LogLogPoint> pts, int bins_per_decade) {
    return envelope(pts, bins_per_decade, false);
}

}  // namespace spiraldim
