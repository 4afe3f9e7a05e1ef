#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <utility>

namespace spiraldim {

// Critical points of the twist map x -> x^{tp} e^{i/x^t} (argument x^-t):

// largest y* < y whose argument exceeds arg(y) by pi: (y^-t + pi)^{-1/t}
double antipodal_predecessor(double t, double y);

// m-th largest point sharing the argument of y: (y^-t + 2 pi m)^{-1/t}
double same_ray_point(double t, double y, double m);

// y - (y^-t + delta)^{-1/t} in a cancellation-free form.
double stable_gap(double t, double y, double delta);

// Geometry of an ordered pair (x, y) with x deeper than y by the argument
// offset 2 pi turns + frac.
struct PairGeometry {
    double param_gap = 0.0;   // y - x > 0
    double image_dist = 0.0;  // |f(x) - f(y)|
    bool valid = false;
};

// A homeomorphism (0,1) -> truncated spiral, exposed through its argument
// and radius so that pair geometry can be evaluated without cancellation.
class WindingMap {
public:
    enum class Kind { twist, piecewise };

    // x -> x^{tp} e^{i/x^t}
    static WindingMap twist(double p, double t);

    // the glued construction: partition (0,1) into blocks of length
    // k^{-p/alpha}/Z, bend each block by the alpha-power profile and wrap it
    // onto turn k at constant speed
    static WindingMap piecewise(double p, double alpha);

    // twist map with t = alpha/(p - alpha), realizing (alpha, p alpha/(p-alpha))
    static WindingMap twist_for_alpha(double p, double alpha);

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    double t() const;      // twist kind only
    double alpha() const;  // piecewise kind only

    // (alpha, beta) this map is known to realize.
    std::pair<double, double> sharp_exponents() const;

    double argument_of(double x) const;  // unreduced, strictly decreasing in x
    double radius_of(double x) const;
    std::array<double, 2> forward(double x) const;

    // Precomputed anchor state for repeated pairs at the same y.
    struct Anchor {
        // twist
        double y = 0.0;
        double log_y = 0.0;
        double y_pow_t = 0.0;
        double log_radius = 0.0;
        // piecewise
        std::int64_t k = 0;
        double w = 0.0;
        double u = 0.0;
        double x_arc = 0.0;  // lo_k + u
        bool ok = false;
    };

    Anchor anchor(double y) const;
    PairGeometry pair_from_anchor(const Anchor& a, double turns, double frac) const;
    PairGeometry pair_by_offset(double y, double turns, double frac) const;

    // piecewise kind: the parameter a_k where block k starts (a_1 = 1); the
    // map sends [a_{k+1}, a_k) onto turn k.
    double block_boundary(std::int64_t k) const;

private:
    WindingMap() = default;

    Kind kind_ = Kind::twist;
    double p_ = 1.0;
    double t_ = 1.0;
    double alpha_ = 0.5;
    std::shared_ptr<const struct PiecewiseData> pw_;
};

}  // namespace spiraldim
