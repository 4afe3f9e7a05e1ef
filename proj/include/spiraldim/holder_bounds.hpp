#pragma once

#include <utility>

namespace spiraldim {

// Sharp Holder exponents (alpha, beta) of the twist map x -> x^{tp} e^{i/x^t}:
// alpha = min(tp/(t+1), 1), beta = max(tp, 1).
std::pair<double, double> twist_sharp_exponents(double p, double t);

// The sharp inverse exponent paired with a forward exponent alpha < p:
// beta = p alpha / (p - alpha).  Throws std::domain_error for alpha >= p.
double conjugate_exponent(double p, double alpha);

// Upper bounds on the forward exponent alpha given the inverse exponent beta.
double sharp_alpha_bound(double p, double beta);     // p beta/(p+beta) ^ 1
double spectrum_alpha_bound(double p, double beta);  // (p beta + beta)/(p + 2 beta) ^ 1
double box_alpha_bound(double p);                    // (p+1)/2 ^ 1

struct AlphaBounds {
    double sharp;
    double spectrum;
    double box;
};
AlphaBounds alpha_upper_bounds(double p, double beta);

// Lower bound on beta from the Assouad spectrum: max(p alpha/(1+p-2 alpha), 1).
// Requires 1 + p - 2 alpha > 0.
double inverse_bound_from_spectrum(double p, double alpha);

// Assouad-dimension distortion under an (alpha, beta)-Holder homeomorphism:
// dim_A Y >= dimA_X (1 - theta0) / (beta - alpha theta0).
double assouad_distortion_bound(double dimA_X, double theta0, double alpha, double beta);

}  // namespace spiraldim
