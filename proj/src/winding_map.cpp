#include "spiraldim/winding_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spiraldim/errors.hpp"
#include "spiraldim/holder_bounds.hpp"
#include "spiraldim/spiral.hpp"

namespace spiraldim {

double antipodal_predecessor(double t, double y) {
    if (!(t > 0.0)) throw std::domain_error("t must be positive");
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("y must lie in (0, 1)");
    return std::pow(std::pow(y, -t) + kTwoPi / 2.0, -1.0 / t);
}

double same_ray_point(double t, double y, double m) {
    if (!(t > 0.0)) throw std::domain_error("t must be positive");
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("y must lie in (0, 1)");
    if (!(m >= 1.0)) throw std::domain_error("m must be >= 1");
    return std::pow(std::pow(y, -t) + kTwoPi * m, -1.0 / t);
}

double stable_gap(double t, double y, double delta) {
    if (!(t > 0.0)) throw std::domain_error("t must be positive");
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("y must lie in (0, 1)");
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    // y (1 - (1 + delta y^t)^{-1/t}) without cancellation
    const double u = delta * std::exp(t * std::log(y));
    return -y * std::expm1(-std::log1p(u) / t);
}

// ---------------------------------------------------------------------------
// piecewise construction internals

struct PiecewiseData {
    static constexpr std::int64_t kCacheSize = 65536;
    static constexpr std::int64_t kSumLimit = 10'000'000;
    static constexpr std::int64_t kTurnCap = 8'500'000'000'000'000;  // < 2^53

    double p = 1.0;
    double alpha = 0.5;
    double q = 2.0;  // p / alpha
    double Z = 1.0;
    std::vector<double> tail;  // tail[k] = sum_{j >= k} j^-q for k <= kCacheSize + 1

    // T(k) for k beyond the cache: midpoint integral with the first
    // Euler-Maclaurin correction; relative error O(k^-4).
    double analytic_tail(double k) const {
        const double km = k - 0.5;
        return std::pow(km, 1.0 - q) / (q - 1.0) - (q / 24.0) * std::pow(km, -q - 1.0);
    }

    double T(double k) const {
        if (k <= static_cast<double>(kCacheSize + 1)) {
            return tail[static_cast<std::size_t>(k)];
        }
        return analytic_tail(k);
    }

    // T(k) - T(k+m), stable for m << k.
    double delta_T(double k, double m) const {
        if (m <= 1024.0) {
            double s = 0.0;
            const auto mi = static_cast<int>(m);
            for (int j = mi - 1; j >= 0; --j) {
                s += std::pow(k + static_cast<double>(j), -q);
            }
            return s;
        }
        if (k + m <= static_cast<double>(kCacheSize + 1)) {
            return tail[static_cast<std::size_t>(k)] - tail[static_cast<std::size_t>(k + m)];
        }
        if (k > static_cast<double>(kCacheSize)) {
            const double km = k - 0.5;
            const double lr = std::log1p(m / km);
            const double main = std::pow(km, 1.0 - q) * (-std::expm1((1.0 - q) * lr)) / (q - 1.0);
            const double corr =
                (q / 24.0) * std::pow(km, -q - 1.0) * (-std::expm1(-(q + 1.0) * lr));
            return main - corr;
        }
        return T(k) - analytic_tail(k + m);
    }

    double block(double k) const { return std::pow(k, -q) / Z; }

    // Trapezoid table of the polar speed over one turn, in the local
    // coordinate u = x - turn_lower(k).  All arc queries for the map go
    // through the same table, so forward and inverse stay consistent.
    struct TurnTable {
        static constexpr int kPanels = 512;
        double lo = 1.0;
        double h = 0.0;
        std::array<double, kPanels + 1> f{};
        std::array<double, kPanels + 1> cum{};
        double total() const { return cum[kPanels]; }
    };

    double speed(double x) const { return std::pow(x, -p) * std::hypot(1.0, p / x); }

    TurnTable table(double k) const {
        TurnTable t;
        t.lo = 1.0 + kTwoPi * (k - 1.0);
        t.h = kTwoPi / TurnTable::kPanels;
        for (int i = 0; i <= TurnTable::kPanels; ++i) {
            t.f[static_cast<std::size_t>(i)] = speed(t.lo + t.h * i);
        }
        t.cum[0] = 0.0;
        for (int i = 0; i < TurnTable::kPanels; ++i) {
            t.cum[static_cast<std::size_t>(i + 1)] =
                t.cum[static_cast<std::size_t>(i)] +
                0.5 * t.h *
                    (t.f[static_cast<std::size_t>(i)] + t.f[static_cast<std::size_t>(i + 1)]);
        }
        return t;
    }

    static double arc_at(const TurnTable& t, double u) {
        if (u <= 0.0) return 0.0;
        if (u >= kTwoPi) return t.total();
        int i = static_cast<int>(u / t.h);
        i = std::clamp(i, 0, TurnTable::kPanels - 1);
        const double s = u - t.h * i;
        const double a = (t.f[static_cast<std::size_t>(i + 1)] - t.f[static_cast<std::size_t>(i)]) /
                         (2.0 * t.h);
        return t.cum[static_cast<std::size_t>(i)] + t.f[static_cast<std::size_t>(i)] * s + a * s * s;
    }

    static double invert_arc(const TurnTable& t, double target) {
        if (target <= 0.0) return 0.0;
        if (target >= t.total()) return kTwoPi;
        const auto it = std::upper_bound(t.cum.begin(), t.cum.end(), target);
        int i = static_cast<int>(it - t.cum.begin()) - 1;
        i = std::clamp(i, 0, TurnTable::kPanels - 1);
        const double tau = target - t.cum[static_cast<std::size_t>(i)];
        const double b = t.f[static_cast<std::size_t>(i)];
        const double a = (t.f[static_cast<std::size_t>(i + 1)] - t.f[static_cast<std::size_t>(i)]) /
                         (2.0 * t.h);
        const double disc = std::max(b * b + 4.0 * a * tau, 0.0);
        const double s = 2.0 * tau / (b + std::sqrt(disc));
        return t.h * i + std::clamp(s, 0.0, t.h);
    }

    struct Location {
        std::int64_t k;
        double w;  // a_k - x, in [0, |J^k|]
    };

    Location locate(double y) const {
        const double target = y * Z;
        if (!(analytic_tail(static_cast<double>(kTurnCap)) <= target)) {
            throw resource_error("parameter is deeper than the supported turn cap");
        }
        std::int64_t lo = 1, hi = kTurnCap;  // T(lo) > target >= T(hi)
        while (hi - lo > 1) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            if (T(static_cast<double>(mid)) > target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double w = (T(static_cast<double>(lo)) - target) / Z;
        return Location{lo, std::clamp(w, 0.0, block(static_cast<double>(lo)))};
    }
};

namespace {

std::shared_ptr<const PiecewiseData> build_piecewise(double p, double alpha) {
    auto data = std::make_shared<PiecewiseData>();
    data->p = p;
    data->alpha = alpha;
    data->q = p / alpha;
    const double q = data->q;

    // Z = sum_{k <= 1e7} k^-q + analytic tail, accumulated backwards in fixed
    // chunks so the result does not depend on the thread count.
    constexpr std::int64_t chunk = 65536;
    const std::int64_t first = PiecewiseData::kCacheSize + 1;
    const std::int64_t nchunks = (PiecewiseData::kSumLimit - first + chunk) / chunk;
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t k_lo = first + c * chunk;
        const std::int64_t k_hi = std::min(k_lo + chunk - 1, PiecewiseData::kSumLimit);
        double s = 0.0;
        for (std::int64_t k = k_hi; k >= k_lo; --k) {
            s += std::pow(static_cast<double>(k), -q);
        }
        partial[static_cast<std::size_t>(c)] = s;
    }
    double above = data->analytic_tail(static_cast<double>(PiecewiseData::kSumLimit + 1));
    for (std::int64_t c = nchunks - 1; c >= 0; --c) {
        above += partial[static_cast<std::size_t>(c)];
    }

    data->tail.assign(static_cast<std::size_t>(PiecewiseData::kCacheSize) + 2, 0.0);
    data->tail[static_cast<std::size_t>(PiecewiseData::kCacheSize) + 1] = above;
    for (std::int64_t k = PiecewiseData::kCacheSize; k >= 1; --k) {
        data->tail[static_cast<std::size_t>(k)] =
            data->tail[static_cast<std::size_t>(k + 1)] + std::pow(static_cast<double>(k), -q);
    }
    data->Z = data->tail[1];
    return data;
}

void validate_alpha(double p, double alpha) {
    if (!(p > 0.0)) throw std::domain_error("p must be positive");
    const double lo = p / (p + 1.0);
    if (!(alpha >= lo && alpha < p && alpha > 0.0 && alpha <= 1.0)) {
        throw std::domain_error("alpha must lie in [p/(p+1), p) intersected with (0, 1]");
    }
}

}  // namespace

WindingMap WindingMap::twist(double p, double t) {
    if (!(p > 0.0 && t > 0.0)) throw std::domain_error("twist map needs p, t > 0");
    WindingMap m;
    m.kind_ = Kind::twist;
    m.p_ = p;
    m.t_ = t;
    return m;
}

WindingMap WindingMap::piecewise(double p, double alpha) {
    validate_alpha(p, alpha);
    WindingMap m;
    m.kind_ = Kind::piecewise;
    m.p_ = p;
    m.alpha_ = alpha;
    m.pw_ = build_piecewise(p, alpha);
    return m;
}

WindingMap WindingMap::twist_for_alpha(double p, double alpha) {
    validate_alpha(p, alpha);
    return twist(p, alpha / (p - alpha));
}

double WindingMap::t() const {
    if (kind_ != Kind::twist) throw std::logic_error("t() is for the twist kind");
    return t_;
}

double WindingMap::alpha() const {
    if (kind_ != Kind::piecewise) throw std::logic_error("alpha() is for the piecewise kind");
    return alpha_;
}

std::pair<double, double> WindingMap::sharp_exponents() const {
    if (kind_ == Kind::twist) return twist_sharp_exponents(p_, t_);
    return {alpha_, conjugate_exponent(p_, alpha_)};
}

WindingMap::Anchor WindingMap::anchor(double y) const {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("map parameter must lie in (0, 1)");
    Anchor a;
    a.y = y;
    if (kind_ == Kind::twist) {
        a.log_y = std::log(y);
        a.y_pow_t = std::exp(t_ * a.log_y);
        a.log_radius = t_ * p_ * a.log_y;
        a.ok = true;
        return a;
    }
    const auto loc = pw_->locate(y);
    a.k = loc.k;
    a.w = loc.w;
    const double J = pw_->block(static_cast<double>(loc.k));
    const double nu = (loc.w <= 0.0) ? 0.0 : std::exp(alpha_ * std::log(loc.w / J));
    const auto tbl = pw_->table(static_cast<double>(loc.k));
    a.u = PiecewiseData::invert_arc(tbl, nu * tbl.total());
    a.x_arc = tbl.lo + a.u;
    a.ok = true;
    return a;
}

PairGeometry WindingMap::pair_from_anchor(const Anchor& a, double turns, double frac) const {
    PairGeometry g;
    if (!a.ok || !(turns >= 0.0) || !(frac >= 0.0) || frac >= kTwoPi ||
        (turns == 0.0 && frac == 0.0)) {
        return g;
    }
    if (kind_ == Kind::twist) {
        const double delta = kTwoPi * turns + frac;
        const double u = delta * a.y_pow_t;
        const double lr = std::log1p(u);
        const double gap = -a.y * std::expm1(-lr / t_);
        const double r_y = std::exp(a.log_radius);
        const double ratio = std::exp(-p_ * lr);
        const double rdiff = r_y * (-std::expm1(-p_ * lr));
        const double half = std::sin(0.5 * frac);
        const double dist = std::hypot(rdiff, 2.0 * r_y * std::sqrt(ratio) * half);
        if (gap > 0.0 && dist > 0.0 && std::isfinite(gap) && std::isfinite(dist)) {
            g.param_gap = gap;
            g.image_dist = dist;
            g.valid = true;
        }
        return g;
    }

    // piecewise: move deeper by `turns` full turns plus `frac` of a turn
    double u2 = a.u + frac;
    double m = turns;
    if (u2 >= kTwoPi) {
        u2 -= kTwoPi;
        m += 1.0;
    }
    const double k2 = static_cast<double>(a.k) + m;
    if (k2 > static_cast<double>(PiecewiseData::kTurnCap)) return g;

    const auto tbl2 = pw_->table(k2);
    const double nu2 = PiecewiseData::arc_at(tbl2, u2) / tbl2.total();
    const double w2 =
        (nu2 <= 0.0) ? 0.0 : pw_->block(k2) * std::exp(std::log(nu2) / alpha_);

    double gap;
    if (m == 0.0) {
        gap = w2 - a.w;
    } else {
        gap = pw_->delta_T(static_cast<double>(a.k), m) / pw_->Z - a.w + w2;
    }

    const double dx = kTwoPi * m + (u2 - a.u);
    const double r1 = std::pow(a.x_arc, -p_);
    const double lr = std::log1p(dx / a.x_arc);
    const double ratio = std::exp(-p_ * lr);
    const double rdiff = r1 * (-std::expm1(-p_ * lr));
    const double half = std::sin(0.5 * frac);
    const double dist = std::hypot(rdiff, 2.0 * r1 * std::sqrt(ratio) * half);

    if (gap > 0.0 && dist > 0.0 && std::isfinite(gap) && std::isfinite(dist)) {
        g.param_gap = gap;
        g.image_dist = dist;
        g.valid = true;
    }
    return g;
}

PairGeometry WindingMap::pair_by_offset(double y, double turns, double frac) const {
    return pair_from_anchor(anchor(y), turns, frac);
}

double WindingMap::block_boundary(std::int64_t k) const {
    if (kind_ != Kind::piecewise) throw std::logic_error("block_boundary is for the piecewise kind");
    if (k < 1 || k > PiecewiseData::kTurnCap) throw std::domain_error("block index out of range");
    return pw_->T(static_cast<double>(k)) / pw_->Z;
}

double WindingMap::argument_of(double x) const {
    if (kind_ == Kind::twist) {
        if (!(x > 0.0 && x < 1.0)) throw std::domain_error("map parameter must lie in (0, 1)");
        return std::pow(x, -t_);
    }
    const Anchor a = anchor(x);
    return a.x_arc;
}

double WindingMap::radius_of(double x) const {
    if (kind_ == Kind::twist) {
        if (!(x > 0.0 && x < 1.0)) throw std::domain_error("map parameter must lie in (0, 1)");
        return std::exp(t_ * p_ * std::log(x));
    }
    const Anchor a = anchor(x);
    return std::pow(a.x_arc, -p_);
}

std::array<double, 2> WindingMap::forward(double x) const {
    if (kind_ == Kind::twist) {
        const double r = radius_of(x);
        const double arg = std::pow(x, -t_);
        return {r * std::cos(arg), r * std::sin(arg)};
    }
    const Anchor a = anchor(x);
    const double r = std::pow(a.x_arc, -p_);
    // turn starts at angle 1 (mod 2pi), so the reduced angle is 1 + u
    const double ang = 1.0 + a.u;
    return {r * std::cos(ang), r * std::sin(ang)};
}

}  // namespace spiraldim
