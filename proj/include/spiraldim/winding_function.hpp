#pragma once

#include <functional>
#include <memory>

namespace spiraldim {

enum class WindingKind {
    polynomial,     // phi(x) = x^-p
    log_perturbed,  // phi(x) = x^-p (log x)^gamma
    comparable,     // phi(x) = eps(x) x^-p with eps Lipschitz and bounded in [c, C]
};

// Declared comparability data for the `comparable` kind.  The factor
// eps(x) = phi(x) x^p must stay inside [lower, upper] and obey the declared
// Lipschitz constant; the constructor verifies both by sampling and rejects
// profiles that escape the bounds (e.g. eps(x) = log x).
struct ComparabilitySpec {
    std::function<double(double)> factor;         // eps(x)
    std::function<double(double)> factor_deriv;   // eps'(x); empty => no derivative
    double lipschitz = 1.0;
    double lower = 0.5;
    double upper = 2.0;
    double check_to = 1e6;  // sampling range [1, check_to] for verification
};

// A strictly decreasing radius profile phi on [1, inf) with phi -> 0,
// defining the spiral { phi(x) e^{ix} : x > 1 }.
class WindingFunction {
public:
    static WindingFunction polynomial(double p);
    static WindingFunction log_perturbed(double p, double gamma);
    static WindingFunction comparable(double p, ComparabilitySpec spec);

    double operator()(double x) const;  // phi(x), x >= 1
    bool has_derivative() const;
    double derivative(double x) const;  // phi'(x)

    WindingKind kind() const { return kind_; }
    double p() const { return p_; }
    double gamma() const { return gamma_; }

    // eps(x) = phi(x) x^p; identically 1 for the polynomial kind.
    double comparability(double x) const;

    // smallest x from which phi is strictly decreasing; 1 except for the
    // log-perturbed kind, which first rises until log x = gamma / p
    double monotone_from() const;

    const ComparabilitySpec* spec() const { return spec_.get(); }

private:
    WindingFunction() = default;

    WindingKind kind_ = WindingKind::polynomial;
    double p_ = 1.0;
    double gamma_ = 0.0;
    std::shared_ptr<const ComparabilitySpec> spec_;
};

// The comparable profile used by the equivalence demos and tests:
// phi(x) = 3 / (5 x^p x^{-1/x} + x^{p/2} log x), for which
// eps(x) = 3 / (5 x^{-1/x} + x^{-p/2} log x) is Lipschitz and bounded.
WindingFunction reciprocal_mixed_profile(double p);

}  // namespace spiraldim
