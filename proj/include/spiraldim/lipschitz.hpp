#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spiraldim/exec.hpp"
#include "spiraldim/spiral.hpp"
#include "spiraldim/winding_function.hpp"

namespace spiraldim {

// The radial correspondence F(x^-p e^{ix}) = phi(x) e^{ix} between the
// polynomial spiral and S(phi).  phi must carry two-sided comparability
// bounds (polynomial or comparable kinds).
class EquivalenceMap {
public:
    explicit EquivalenceMap(WindingFunction phi);

    const WindingFunction& profile() const { return phi_; }
    double p() const { return phi_.p(); }
    bool reversed() const { return reversed_; }

    // Image of the spiral point with parameter x (requires x >= 1).
    SpiralPoint apply(double x) const;

    // |F(a) - F(b)| / |a - b| for the source points with parameters x, y.
    double distortion_ratio(double x, double y) const;

    EquivalenceMap inverse() const;

private:
    WindingFunction phi_;
    bool reversed_ = false;
};

struct DistortionReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::int64_t pair_budget = 0;
    // pairs with x - y (mod 2pi) inside / outside (pi/2, 3pi/2)
    std::int64_t transverse_pairs = 0;
    std::int64_t aligned_pairs = 0;
    std::int64_t near_pairs = 0;  // |x - y| down to 1e-9 y
};

// Min/max of the distortion ratio over a seeded stratified pair sample:
// one third aligned, one third transverse, one third near-coincident,
// anchors log-uniform over [1, 1e6].
DistortionReport distortion_stats(const EquivalenceMap& map, std::uint64_t seed,
                                  std::int64_t budget, Exec exec = Exec::parallel);

// The vanishing quantity behind the log-perturbed non-equivalence:
//   l^-p (log l)^gamma / ( sum_{k >= l} k^{-p/alpha} (log k)^{gamma/alpha} )^beta
// with beta = p alpha / (p - alpha).  Requires 0 < alpha < p.
std::vector<double> log_perturbation_decay(double p, double gamma, double alpha,
                                           std::span<const double> l_grid,
                                           Exec exec = Exec::parallel);

}  // namespace spiraldim
