#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spiraldim/holder_bounds.hpp"

using namespace spiraldim;

TEST_CASE("twist map sharp exponents") {
    SUBCASE("t = 1/p gives the Lipschitz-inverse endpoint") {
        for (double p : {0.5, 0.7, 1.0, 1.3, 2.0}) {
            const auto [a, b] = twist_sharp_exponents(p, 1.0 / p);
            CHECK(a == doctest::Approx(p / (p + 1.0)).epsilon(1e-15));
            CHECK(b == doctest::Approx(1.0));
        }
    }
    SUBCASE("t = 1/(p-1) reaches alpha = 1 for p > 1") {
        const auto [a, b] = twist_sharp_exponents(1.3, 1.0 / 0.3);
        CHECK(a == doctest::Approx(1.0));
        CHECK(b == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("p = t = 1") {
        const auto [a, b] = twist_sharp_exponents(1.0, 1.0);
        CHECK(a == doctest::Approx(0.5));
        CHECK(b == doctest::Approx(1.0));
    }

    SUBCASE("curve shape in t: beta kinks at 1/p, alpha saturates at 1/(p-1)") {
        const double p = 1.3;
        // beta sits at 1 up to t = 1/p, then rises linearly
        CHECK(twist_sharp_exponents(p, 0.5 / p).second == doctest::Approx(1.0));
        CHECK(twist_sharp_exponents(p, 0.99 / p).second == doctest::Approx(1.0));
        CHECK(twist_sharp_exponents(p, 1.2 / p).second == doctest::Approx(1.2));
        // alpha reaches 1 exactly at t = 1/(p-1) and stays clamped
        const double tc = 1.0 / (p - 1.0);
        CHECK(twist_sharp_exponents(p, 0.9 * tc).first < 1.0);
        CHECK(twist_sharp_exponents(p, tc).first == doctest::Approx(1.0));
        CHECK(twist_sharp_exponents(p, 2.0 * tc).first == doctest::Approx(1.0));
    }
}

TEST_CASE("conjugate exponent") {
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        CHECK(conjugate_exponent(p, p / (p + 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(conjugate_exponent(1.0, 0.5) == doctest::Approx(1.0));
    CHECK(conjugate_exponent(2.0, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(conjugate_exponent(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(conjugate_exponent(0.5, 0.7), std::domain_error);

    SUBCASE("matches the twist family at t = alpha/(p - alpha)") {
        const auto [a, b] = twist_sharp_exponents(2.0, 1.0);
        CHECK(a == doctest::Approx(1.0));
        CHECK(b == doctest::Approx(conjugate_exponent(2.0, 1.0)));
    }

    SUBCASE("conjugate identity on a non-clamped grid") {
        int checked = 0;
        for (int i = 1; i <= 10; ++i) {
            const double p = 0.3 * i;
            for (int j = 1; j <= 10; ++j) {
                const double t = 0.35 * j;
                const auto [a, b] = twist_sharp_exponents(p, t);
                if (t * p / (t + 1.0) >= 1.0 || t * p < 1.0) continue;  // clamped regime
                ++checked;
                CHECK(b == doctest::Approx(conjugate_exponent(p, a)).epsilon(1e-12));
            }
        }
        CHECK(checked >= 20);
    }
}

TEST_CASE("alpha upper bounds") {
    SUBCASE("sharp") {
        CHECK(sharp_alpha_bound(1.0, 1.0) == doctest::Approx(0.5));
        CHECK(sharp_alpha_bound(3.0, 1e9) == doctest::Approx(1.0));
        CHECK(sharp_alpha_bound(0.5, 1.0) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("spectrum-derived") {
        CHECK(spectrum_alpha_bound(1.0, 1.0) == doctest::Approx(2.0 / 3.0));
        CHECK(spectrum_alpha_bound(1.0, 1e12) == doctest::Approx(1.0));
        CHECK(spectrum_alpha_bound(0.5, 2.0) == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("box-derived") {
        CHECK(box_alpha_bound(1.0) == doctest::Approx(1.0));
        CHECK(box_alpha_bound(1.0 / 3.0) == doctest::Approx(2.0 / 3.0));
        CHECK(box_alpha_bound(0.5) == doctest::Approx(0.75));
    }

    SUBCASE("ordering sharp <= spectrum <= box, strict off the clamps") {
        for (int i = 1; i <= 30; ++i) {
            const double p = 0.1 * i;
            for (int j = 0; j <= 30; ++j) {
                const double beta = 1.0 + 0.3 * j;
                const auto bounds = alpha_upper_bounds(p, beta);
                CHECK(bounds.sharp <= bounds.spectrum + 1e-14);
                CHECK(bounds.spectrum <= bounds.box + 1e-14);
                if (bounds.box < 1.0) {
                    CHECK(bounds.sharp < bounds.spectrum);
                    CHECK(bounds.spectrum < bounds.box);
                }
            }
        }
    }

    SUBCASE("spectrum bound is nondecreasing in beta and approaches the box bound") {
        for (double p : {0.25, 0.5, 0.9, 1.5}) {
            double prev = 0.0;
            for (double beta = 1.0; beta <= 64.0; beta *= 2.0) {
                const double v = spectrum_alpha_bound(p, beta);
                CHECK(v >= prev - 1e-15);
                prev = v;
            }
            CHECK(box_alpha_bound(p) - spectrum_alpha_bound(p, 1e4) < 0.01);
            CHECK(box_alpha_bound(p) - spectrum_alpha_bound(p, 1e4) >= -1e-14);
        }
    }
}

TEST_CASE("beta lower bound from the spectrum") {
    CHECK(inverse_bound_from_spectrum(1.0, 0.9) == doctest::Approx(4.5));
    CHECK(inverse_bound_from_spectrum(2.0, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(inverse_bound_from_spectrum(1.0, 1.0), std::domain_error);

    SUBCASE("never stronger than the sharp conjugate") {
        for (double p : {0.5, 1.0, 2.0}) {
            for (int j = 1; j < 20; ++j) {
                const double alpha = j / 20.0;
                if (!(alpha < p) || !(1.0 + p - 2.0 * alpha > 0.0)) continue;
                if (!(alpha >= p / (p + 1.0))) continue;
                CHECK(inverse_bound_from_spectrum(p, alpha) <=
                      conjugate_exponent(p, alpha) + 1e-12);
            }
        }
    }
}

TEST_CASE("Assouad distortion bound") {
    CHECK(assouad_distortion_bound(2.0, 2.0 / 3.0, 1.0, 2.0) == doctest::Approx(0.5));
    CHECK(assouad_distortion_bound(1.0, 0.5, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(assouad_distortion_bound(1.0, 1.0, 1.0, 1.0), std::domain_error);

    SUBCASE("applying it to the inverse map reproduces the spectrum bound") {
        // With g = f^{-1} (a (1/beta, 1/alpha)-Holder map) and theta0 = p/(p+1),
        // the bound "dim <= 1" is equivalent to beta >= p alpha/(1+p-2alpha).
        for (double p : {0.5, 1.0, 2.0}) {
            const double theta0 = p / (p + 1.0);
            for (int i = 1; i <= 10; ++i) {
                const double alpha = i / 10.0;
                if (!(1.0 + p - 2.0 * alpha > 0.0)) continue;
                for (double beta : {1.0, 1.5, 2.0, 4.0, 8.0}) {
                    const double bound = assouad_distortion_bound(2.0, theta0, 1.0 / beta, 1.0 / alpha);
                    const bool holds = bound <= 1.0 + 1e-12;
                    const bool algebra = beta + 1e-12 >= p * alpha / (1.0 + p - 2.0 * alpha);
                    CHECK(holds == algebra);
                }
            }
        }
    }
}
