#include "spiraldim/holder_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spiraldim {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

}  // namespace

std::pair<double, double> twist_sharp_exponents(double p, double t) {
    require(p > 0.0 && t > 0.0, "twist_sharp_exponents needs p, t > 0");
    const double alpha = std::min(t * p / (t + 1.0), 1.0);
    const double beta = std::max(t * p, 1.0);
    return {alpha, beta};
}

double conjugate_exponent(double p, double alpha) {
    require(p > 0.0, "conjugate_exponent needs p > 0");
    require(alpha > 0.0 && alpha < p, "conjugate_exponent needs 0 < alpha < p");
    return p * alpha / (p - alpha);
}

double sharp_alpha_bound(double p, double beta) {
    require(p > 0.0, "sharp_alpha_bound needs p > 0");
    require(beta >= 1.0, "sharp_alpha_bound needs beta >= 1");
    return std::min(p * beta / (p + beta), 1.0);
}

double spectrum_alpha_bound(double p, double beta) {
    require(p > 0.0, "spectrum_alpha_bound needs p > 0");
    require(beta >= 1.0, "spectrum_alpha_bound needs beta >= 1");
    return std::min((p * beta + beta) / (p + 2.0 * beta), 1.0);
}

double box_alpha_bound(double p) {
    require(p > 0.0, "box_alpha_bound needs p > 0");
    return std::min((p + 1.0) / 2.0, 1.0);
}

AlphaBounds alpha_upper_bounds(double p, double beta) {
    return AlphaBounds{sharp_alpha_bound(p, beta), spectrum_alpha_bound(p, beta),
                       box_alpha_bound(p)};
}

double inverse_bound_from_spectrum(double p, double alpha) {
    require(p > 0.0, "inverse_bound_from_spectrum needs p > 0");
    require(alpha > 0.0 && alpha <= 1.0, "inverse_bound_from_spectrum needs alpha in (0, 1]");
    const double denom = 1.0 + p - 2.0 * alpha;
    require(denom > 0.0, "inverse_bound_from_spectrum needs 1 + p - 2 alpha > 0");
    return std::max(p * alpha / denom, 1.0);
}

double assouad_distortion_bound(double dimA_X, double theta0, double alpha, double beta) {
    require(theta0 > 0.0 && theta0 <= 1.0, "theta0 must lie in (0, 1]");
    const double denom = beta - alpha * theta0;
    require(denom > 0.0, "assouad_distortion_bound needs beta - alpha theta0 > 0");
    return dimA_X * (1.0 - theta0) / denom;
}

}  // namespace spiraldim
