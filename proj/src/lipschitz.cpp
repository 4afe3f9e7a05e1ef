#include "spiraldim/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "spiraldim/quadrature.hpp"

namespace spiraldim {

EquivalenceMap::EquivalenceMap(WindingFunction phi) : phi_(std::move(phi)) {
    if (phi_.kind() == WindingKind::log_perturbed) {
        throw std::domain_error(
            "the equivalence map needs a profile comparable to x^-p (log-perturbed profiles are not)");
    }
}

SpiralPoint EquivalenceMap::apply(double x) const {
    if (!(x >= 1.0)) throw std::domain_error("apply requires x >= 1");
    if (reversed_) {
        return spiral_point(WindingFunction::polynomial(phi_.p()), x);
    }
    return spiral_point(phi_, x);
}

namespace {

// |a e^{ix} - b e^{iy}| without cancellation in either regime.
double chord(double a, double b, double delta_reduced) {
    const double s = std::sin(0.5 * delta_reduced);
    return std::hypot(a - b, 2.0 * std::sqrt(a * b) * s);
}

}  // namespace

double EquivalenceMap::distortion_ratio(double x, double y) const {
    if (!(x >= 1.0 && y >= 1.0)) throw std::domain_error("distortion_ratio requires x, y >= 1");
    if (x == y) throw std::domain_error("distortion_ratio needs distinct points");
    const double delta = std::fmod(std::abs(x - y), kTwoPi);
    const double num = chord(phi_(x), phi_(y), delta);
    const double den = chord(std::pow(x, -phi_.p()), std::pow(y, -phi_.p()), delta);
    return reversed_ ? den / num : num / den;
}

EquivalenceMap EquivalenceMap::inverse() const {
    EquivalenceMap m(*this);
    m.reversed_ = !reversed_;
    return m;
}

DistortionReport distortion_stats(const EquivalenceMap& map, std::uint64_t seed,
                                  std::int64_t budget, Exec exec) {
    if (budget < 10'000) throw std::domain_error("budget must be at least 1e4");

    // Deterministic pair stream, independent of the execution policy.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(static_cast<std::size_t>(budget));

    DistortionReport rep;
    const double y_decades = 6.0;
    const double quarter = 0.25 * kTwoPi;
    for (std::int64_t i = 0; i < budget; ++i) {
        const double y = std::pow(10.0, y_decades * unit(rng));
        const int regime = static_cast<int>(i % 3);
        double dx;
        if (regime == 0) {
            // full-turn separations landing outside (pi/2, 3pi/2)
            const double off = unit(rng) * 0.5 * kTwoPi;
            const double frac = (off > quarter) ? off + 0.5 * kTwoPi : off;
            dx = kTwoPi * std::floor(std::pow(10.0, 4.0 * unit(rng))) + frac;
        } else if (regime == 1) {
            // landing inside (pi/2, 3pi/2)
            const double frac = quarter + unit(rng) * 0.5 * kTwoPi;
            dx = kTwoPi * std::floor(std::pow(10.0, 4.0 * unit(rng))) + frac;
        } else {
            // near-coincident: |x - y| log-uniform in [1e-9 y, pi/2]
            const double l_lo = std::log(1e-9 * y);
            const double l_hi = std::log(quarter);
            dx = std::exp(l_lo + unit(rng) * (l_hi - l_lo));
            ++rep.near_pairs;
        }
        const double delta = std::fmod(dx, kTwoPi);
        if (delta > quarter && delta < 3.0 * quarter) {
            ++rep.transverse_pairs;
        } else {
            ++rep.aligned_pairs;
        }
        pairs.emplace_back(y + dx, y);
    }

    double lo = 1e300, hi = -1e300;
#pragma omp parallel for reduction(min : lo) reduction(max : hi) schedule(static) \
    if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < budget; ++i) {
        const auto& pr = pairs[static_cast<std::size_t>(i)];
        const double ratio = map.distortion_ratio(pr.first, pr.second);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    rep.min_ratio = lo;
    rep.max_ratio = hi;
    rep.pair_budget = budget;
    return rep;
}

namespace {

// sum_{k >= l} k^-q (log k)^s: one million direct terms plus the midpoint
// integral of the remainder (quadrature after u = M/w substitution).
double log_tail_sum(double q, double s, double l, Exec exec) {
    constexpr std::int64_t kDirect = 1'000'000;
    const auto l0 = static_cast<std::int64_t>(std::llround(l));

    constexpr std::int64_t chunk = 65536;
    const std::int64_t nchunks = (kDirect + chunk - 1) / chunk;
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t j_lo = c * chunk;
        const std::int64_t j_hi = std::min(j_lo + chunk - 1, kDirect - 1);
        double acc = 0.0;
        for (std::int64_t j = j_hi; j >= j_lo; --j) {
            const double k = static_cast<double>(l0 + j);
            acc += std::exp(-q * std::log(k)) * std::pow(std::log(k), s);
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }

    // Remainder past the midpoint M: with u = M e^v and z = 1 - e^{-(q-1)v},
    //   integral_M^inf u^-q log^s u du
    //     = M^{1-q}/(q-1) * int_0^1 (log M - log1p(-z)/(q-1))^s dz,
    // a bounded integrand (clipped just short of z = 1).
    const double M = static_cast<double>(l0 + kDirect) - 0.5;
    const double logM = std::log(M);
    auto integrand = [&](double z) {
        return std::pow(logM - std::log1p(-z) / (q - 1.0), s);
    };
    const double tol = 1e-11 * std::max(1.0, integrand(0.0));
    double total = std::pow(M, 1.0 - q) / (q - 1.0) *
                   integrate(integrand, 0.0, 1.0 - 1e-14, {tol, 60});
    for (std::int64_t c = nchunks - 1; c >= 0; --c) {
        total += partial[static_cast<std::size_t>(c)];
    }
    return total;
}

}  // namespace

std::vector<double> log_perturbation_decay(double p, double gamma, double alpha,
                                           std::span<const double> l_grid, Exec exec) {
    if (!(p > 0.0 && gamma > 0.0)) throw std::domain_error("p and gamma must be positive");
    if (!(alpha > 0.0 && alpha < p)) throw std::domain_error("alpha must lie in (0, p)");
    if (l_grid.size() < 2) throw std::domain_error("l grid needs at least two entries");
    for (std::size_t i = 1; i < l_grid.size(); ++i) {
        if (!(l_grid[i] > l_grid[i - 1])) throw std::domain_error("l grid must increase");
    }
    if (!(l_grid.back() / l_grid.front() >= 1e3 * (1.0 - 1e-9))) {
        throw std::domain_error("l grid must span at least 3 decades");
    }
    if (!(l_grid.front() >= 2.0)) throw std::domain_error("l grid must start at l >= 2");

    const double q = p / alpha;
    const double s = gamma / alpha;
    const double beta = p * alpha / (p - alpha);

    std::vector<double> out;
    out.reserve(l_grid.size());
    for (double l : l_grid) {
        const double tail = log_tail_sum(q, s, l, exec);
        const double num = std::pow(l, -p) * std::pow(std::log(l), gamma);
        out.push_back(num / std::pow(tail, beta));
    }
    return out;
}

}  // namespace spiraldim
