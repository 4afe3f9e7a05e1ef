#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spiraldim/holder_estimators.hpp"
#include "spiraldim/winding_map.hpp"

using namespace spiraldim;

namespace {

const std::vector<double> kTwistGrid = geometric_grid(1e-7, 1e-1, 8);
const std::vector<double> kBlockGrid = geometric_grid(9.5e-5, 0.95, 8);
const std::vector<double> kMGrid = default_m_grid();

}  // namespace

TEST_CASE("grid validation") {
    const auto map = WindingMap::twist(1.0, 1.0);
    SUBCASE("too few points") {
        const std::vector<double> grid{1e-5, 1e-4, 1e-3, 1e-2};
        CHECK_THROWS_AS(estimate_forward_exponent(map, grid), std::domain_error);
    }
    SUBCASE("too narrow") {
        const auto grid = geometric_grid(1e-3, 1e-1, 8);
        CHECK_THROWS_AS(estimate_forward_exponent(map, grid), std::domain_error);
    }
    SUBCASE("m grid must span two decades") {
        const std::vector<double> m{1.0, 2.0, 5.0, 10.0};
        CHECK_THROWS_AS(estimate_inverse_exponent(map, kTwistGrid, m), std::domain_error);
    }
}

TEST_CASE("twist forward exponents") {
    struct Case {
        double p, t, tol;
    };
    for (const auto& c : {Case{1.0, 1.0, 0.02}, Case{2.0, 1.0, 0.02}, Case{1.0, 4.0, 0.02},
                          Case{0.7, 0.5, 0.02}, Case{2.0, 4.0, 0.02}}) {
        const auto map = WindingMap::twist(c.p, c.t);
        const double alpha = map.sharp_exponents().first;
        const auto est = estimate_forward_exponent(map, kTwistGrid);
        INFO("p=", c.p, " t=", c.t);
        CHECK(std::abs(est.exponent - alpha) <= c.tol);
        CHECK(est.pair_budget > 0);
        CHECK(est.scale_range.first == doctest::Approx(1e-7));
        CHECK(est.scale_range.second == doctest::Approx(1e-1));
    }
}

TEST_CASE("twist inverse exponents") {
    struct Case {
        double p, t;
    };
    for (const auto& c : {Case{1.0, 1.0}, Case{1.0, 3.0}, Case{2.0, 1.0}, Case{0.7, 0.5},
                          Case{2.0, 4.0}}) {
        const auto map = WindingMap::twist(c.p, c.t);
        const double beta = map.sharp_exponents().second;
        const auto est = estimate_inverse_exponent(map, kTwistGrid, kMGrid);
        INFO("p=", c.p, " t=", c.t);
        CHECK(std::abs(est.exponent - beta) <= 0.1 * beta);
    }
    SUBCASE("spec example tolerances") {
        const auto e11 = estimate_inverse_exponent(WindingMap::twist(1.0, 1.0), kTwistGrid, kMGrid);
        CHECK(std::abs(e11.exponent - 1.0) <= 0.03);
        const auto e13 = estimate_inverse_exponent(WindingMap::twist(1.0, 3.0), kTwistGrid, kMGrid);
        CHECK(std::abs(e13.exponent - 3.0) <= 0.1);
    }
}

TEST_CASE("piecewise certification") {
    const auto map = WindingMap::piecewise(1.0, 0.6);
    const auto fw = estimate_forward_exponent(map, kBlockGrid);
    CHECK(std::abs(fw.exponent - 0.6) <= 0.03);
    const auto inv = estimate_inverse_exponent(map, kBlockGrid, kMGrid);
    CHECK(std::abs(inv.exponent - 1.5) <= 0.1);

    SUBCASE("p = 2 with alpha = 1: a Lipschitz map with conjugate 2") {
        const auto steep = WindingMap::piecewise(2.0, 1.0);
        const auto f2 = estimate_forward_exponent(steep, kBlockGrid);
        CHECK(std::abs(f2.exponent - 1.0) <= 0.03);
        const auto i2 = estimate_inverse_exponent(steep, kBlockGrid, kMGrid);
        CHECK(std::abs(i2.exponent - 2.0) <= 0.2);
    }

    SUBCASE("alpha at the admissible floor has a Lipschitz inverse") {
        const auto flat = WindingMap::piecewise(1.0, 0.5);  // beta = 1
        const auto inv2 = estimate_inverse_exponent(flat, kBlockGrid, kMGrid);
        CHECK(std::abs(inv2.exponent - 1.0) <= 0.1);
        const auto fw2 = estimate_forward_exponent(flat, kBlockGrid);
        CHECK(std::abs(fw2.exponent - 0.5) <= 0.03);
    }
}

TEST_CASE("estimator invariants") {
    SUBCASE("forward never exceeds min(p, 1) + 0.02") {
        for (double p : {0.7, 1.0, 1.3, 2.0}) {
            for (double t : {0.5, 1.0, 2.0, 4.0}) {
                const auto est = estimate_forward_exponent(WindingMap::twist(p, t), kTwistGrid);
                CHECK(est.exponent <= std::min(p, 1.0) + 0.02);
            }
        }
        const auto pw = estimate_forward_exponent(WindingMap::piecewise(1.0, 2.0 / 3.0), kBlockGrid);
        CHECK(pw.exponent <= 1.02);
    }

    SUBCASE("duality: fitted alpha/beta matches the sharp ratio within 5%") {
        for (double p : {0.7, 1.0, 2.0}) {
            for (double t : {0.5, 1.0, 2.0, 4.0}) {
                const auto map = WindingMap::twist(p, t);
                const auto [alpha, beta] = map.sharp_exponents();
                const auto fw = estimate_forward_exponent(map, kTwistGrid);
                const auto inv = estimate_inverse_exponent(map, kTwistGrid, kMGrid);
                const double fitted = fw.exponent / inv.exponent;
                CHECK(fitted == doctest::Approx(alpha / beta).epsilon(0.05));
                // near-bi-Lipschitz products only occur when alpha * beta >= 1
                if (fitted >= 0.95) CHECK(alpha * beta >= 1.0 - 1e-12);
            }
        }
    }

    SUBCASE("critical pairs dominate random off-critical pairs") {
        EstimatorOptions opt;
        opt.random_pairs = 100'000;
        for (double p : {0.7, 1.0, 2.0}) {
            const auto est = estimate_forward_exponent(WindingMap::twist(p, 1.0), kTwistGrid, opt);
            // quotient excess over the critical envelope, as a factor
            CHECK(std::exp(est.slope_residual) <= 3.0);
        }
        const auto pw =
            estimate_forward_exponent(WindingMap::piecewise(1.0, 0.6), kBlockGrid, opt);
        CHECK(std::exp(pw.slope_residual) <= 3.0);
    }

    SUBCASE("results do not depend on the execution policy") {
        EstimatorOptions ser;
        ser.exec = Exec::serial;
        const auto map = WindingMap::twist(1.3, 2.0);
        const auto a = estimate_forward_exponent(map, kTwistGrid);
        const auto b = estimate_forward_exponent(map, kTwistGrid, ser);
        CHECK(a.exponent == b.exponent);
        CHECK(a.slope_residual == b.slope_residual);
        const auto c = estimate_inverse_exponent(map, kTwistGrid, kMGrid);
        const auto d = estimate_inverse_exponent(map, kTwistGrid, kMGrid, ser);
        CHECK(c.exponent == d.exponent);
    }
}
