#include "spiraldim/winding_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spiraldim {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

WindingFunction WindingFunction::polynomial(double p) {
    require_positive(p, "p");
    WindingFunction w;
    w.kind_ = WindingKind::polynomial;
    w.p_ = p;
    return w;
}

WindingFunction WindingFunction::log_perturbed(double p, double gamma) {
    require_positive(p, "p");
    require_positive(gamma, "gamma");
    WindingFunction w;
    w.kind_ = WindingKind::log_perturbed;
    w.p_ = p;
    w.gamma_ = gamma;
    return w;
}

WindingFunction WindingFunction::comparable(double p, ComparabilitySpec spec) {
    require_positive(p, "p");
    if (!spec.factor) throw std::domain_error("comparable kind needs a factor function");
    if (!(spec.lower > 0.0) || !(spec.upper >= spec.lower)) {
        throw std::domain_error("comparability bounds must satisfy 0 < c <= C");
    }
    require_positive(spec.lipschitz, "lipschitz constant");

    // Verify the declared bounds and Lipschitz constant by sampling a log
    // grid; this is what keeps profiles like x^-p log x out of the kind.
    const int n = 4096;
    const double hi = spec.check_to;
    double prev_x = 0.0, prev_e = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = std::exp(std::log(hi) * static_cast<double>(i) / n);
        const double e = spec.factor(x);
        if (!(e >= spec.lower) || !(e <= spec.upper)) {
            throw std::domain_error("comparability factor escapes the declared bounds");
        }
        if (i > 0 && x > prev_x) {
            const double quotient = std::abs(e - prev_e) / (x - prev_x);
            if (quotient > spec.lipschitz * (1.0 + 1e-9)) {
                throw std::domain_error("comparability factor violates the declared Lipschitz constant");
            }
        }
        prev_x = x;
        prev_e = e;
    }

    WindingFunction w;
    w.kind_ = WindingKind::comparable;
    w.p_ = p;
    w.spec_ = std::make_shared<const ComparabilitySpec>(std::move(spec));
    return w;
}

double WindingFunction::operator()(double x) const {
    if (!(x >= 1.0)) throw std::domain_error("winding function evaluated at x < 1");
    switch (kind_) {
        case WindingKind::polynomial:
            return std::pow(x, -p_);
        case WindingKind::log_perturbed:
            return std::pow(x, -p_) * std::pow(std::log(x), gamma_);
        case WindingKind::comparable:
            return spec_->factor(x) * std::pow(x, -p_);
    }
    return 0.0;
}

bool WindingFunction::has_derivative() const {
    return kind_ != WindingKind::comparable || static_cast<bool>(spec_->factor_deriv);
}

double WindingFunction::derivative(double x) const {
    if (!(x >= 1.0)) throw std::domain_error("winding function derivative at x < 1");
    switch (kind_) {
        case WindingKind::polynomial:
            return -p_ * std::pow(x, -p_ - 1.0);
        case WindingKind::log_perturbed: {
            const double lx = std::log(x);
            // d/dx [x^-p (log x)^g] = x^{-p-1} (log x)^{g-1} (g - p log x)
            return std::pow(x, -p_ - 1.0) * std::pow(lx, gamma_ - 1.0) * (gamma_ - p_ * lx);
        }
        case WindingKind::comparable: {
            if (!spec_->factor_deriv) {
                throw std::invalid_argument("comparable profile declared without a derivative");
            }
            const double e = spec_->factor(x);
            const double de = spec_->factor_deriv(x);
            return de * std::pow(x, -p_) - p_ * e * std::pow(x, -p_ - 1.0);
        }
    }
    return 0.0;
}

double WindingFunction::comparability(double x) const {
    if (kind_ == WindingKind::comparable) return spec_->factor(x);
    return (*this)(x)*std::pow(x, p_);
}

double WindingFunction::monotone_from() const {
    if (kind_ == WindingKind::log_perturbed) return std::exp(gamma_ / p_);
    return 1.0;
}

WindingFunction reciprocal_mixed_profile(double p) {
    // eps(x) = 3 / E(x) with E(x) = 5 x^{-1/x} + x^{-p/2} log x.
    auto eps = [p](double x) {
        const double lx = std::log(x);
        const double e1 = 5.0 * std::exp(-lx / x);
        const double e2 = std::exp(-0.5 * p * lx) * lx;
        return 3.0 / (e1 + e2);
    };
    auto eps_deriv = [p](double x) {
        const double lx = std::log(x);
        const double a = 5.0 * std::exp(-lx / x);           // 5 x^{-1/x}
        const double da = a * (lx - 1.0) / (x * x);         // d/dx 5 x^{-1/x}
        const double b = std::exp(-0.5 * p * lx);           // x^{-p/2}
        const double db = b / x * (1.0 - 0.5 * p * lx);     // d/dx x^{-p/2} log x
        const double E = a + b * lx;
        return -3.0 * (da + db) / (E * E);
    };
    ComparabilitySpec spec;
    spec.factor = eps;
    spec.factor_deriv = eps_deriv;
    spec.lipschitz = 2.0;
    // E is pinched between 5 e^{-1/e} and 5 + max(x^{-p/2} log x) = 5 + 2/(e p).
    spec.lower = 0.9 * 3.0 / (5.0 + 2.0 / (std::exp(1.0) * p));
    spec.upper = 0.9;
    return WindingFunction::comparable(p, std::move(spec));
}

}  // namespace spiraldim
