#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "spiraldim/errors.hpp"
#include "spiraldim/quadrature.hpp"
#include "spiraldim/spiral.hpp"
#include "spiraldim/winding_function.hpp"

using namespace spiraldim;

namespace {

// Independent oracle: polygonal chain length over [lo, hi].
double chain_length(const WindingFunction& phi, double lo, double hi, int segments) {
    double len = 0.0;
    SpiralPoint prev = spiral_point(phi, lo);
    for (int i = 1; i <= segments; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / segments;
        const SpiralPoint cur = spiral_point(phi, x);
        len += std::hypot(cur.cx - prev.cx, cur.cy - prev.cy);
        prev = cur;
    }
    return len;
}

}  // namespace

TEST_CASE("spiral_point basics") {
    const auto p1 = WindingFunction::polynomial(1.0);

    SUBCASE("radius and argument at x = 2pi + 1") {
        const double x = kTwoPi + 1.0;
        const auto pt = spiral_point(p1, x);
        CHECK(pt.radius == doctest::Approx(1.0 / x).epsilon(1e-15));
        CHECK(pt.arg == x);
        // argument reduces to 1 radian after a full turn
        CHECK(pt.cx == doctest::Approx(pt.radius * std::cos(1.0)).epsilon(1e-12));
        CHECK(pt.cy == doctest::Approx(pt.radius * std::sin(1.0)).epsilon(1e-12));
    }

    SUBCASE("x = 1") {
        const auto pt = spiral_point(p1, 1.0);
        CHECK(pt.radius == doctest::Approx(1.0));
        CHECK(pt.cx == doctest::Approx(std::cos(1.0)));
        CHECK(pt.cy == doctest::Approx(std::sin(1.0)));
    }

    SUBCASE("log-perturbed radius at x = e") {
        const auto lp = WindingFunction::log_perturbed(1.0, 1.0);
        const auto pt = spiral_point(lp, std::exp(1.0));
        CHECK(pt.radius == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    }

    SUBCASE("domain error below 1") {
        CHECK_THROWS_AS(spiral_point(p1, 0.999), std::domain_error);
    }

    SUBCASE("coords magnitude equals radius") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 12.0);
        for (int i = 0; i < 1000; ++i) {
            const double x = 1.0 + std::exp(u(rng));
            const auto pt = spiral_point(p1, x);
            CHECK(std::hypot(pt.cx, pt.cy) ==
                  doctest::Approx(pt.radius).epsilon(8 * 2.3e-16));
        }
    }
}

TEST_CASE("turn_index") {
    CHECK(turn_index(1.0 + kTwoPi) == 1);
    CHECK(turn_index(1.0 + kTwoPi + 0.001) == 2);
    CHECK(turn_index(1.0 + 10.0 * kTwoPi) == 10);
    CHECK_THROWS_AS(turn_index(1.0), std::domain_error);
    CHECK_THROWS_AS(turn_index(0.5), std::domain_error);

    SUBCASE("agrees with the defining inequalities on random parameters") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100'000; ++i) {
            const double x = 1.0 + std::pow(10.0, 8.0 * u(rng)) * u(rng) + 1e-12;
            const auto k = turn_index(x);
            CHECK(x > turn_lower(k));
            CHECK(x <= turn_upper(k));
        }
    }

    SUBCASE("consecutive turns share exactly one boundary") {
        for (std::int64_t k = 1; k < 1000; ++k) {
            CHECK(turn_upper(k) == turn_lower(k + 1));
        }
    }
}

TEST_CASE("turn_arclength against the chain oracle") {
    const auto p1 = WindingFunction::polynomial(1.0);
    const auto p2 = WindingFunction::polynomial(2.0);

    SUBCASE("first turn, p = 1") {
        const double quad = turn_arclength(p1, 1);
        const double chain = chain_length(p1, turn_lower(1), turn_upper(1), 1'000'000);
        CHECK(quad == doctest::Approx(chain).epsilon(1e-6));
    }

    SUBCASE("first turn, p = 2, monotone radius bounds") {
        const double quad = turn_arclength(p2, 1);
        CHECK(quad > p2(1.0 + kTwoPi) * kTwoPi);
        CHECK(quad < p2(1.0) * (kTwoPi + 1.0));
    }

    SUBCASE("deep turn matches the chain and the k^-p law") {
        const double quad = turn_arclength(p1, 1000);
        const double chain = chain_length(p1, turn_lower(1000), turn_upper(1000), 20'000);
        CHECK(quad == doctest::Approx(chain).epsilon(1e-6));
        // H1 of turn k is comparable to k^-p
        CHECK(quad * 1000.0 > 0.8);
        CHECK(quad * 1000.0 < 1.25);
    }

    SUBCASE("k^p-normalized lengths bounded above and below") {
        for (double p : {0.5, 1.0, 2.0}) {
            const auto phi = WindingFunction::polynomial(p);
            for (std::int64_t k : {1, 3, 10, 100, 1000, 10000}) {
                const double v = turn_arclength(phi, k) * std::pow(static_cast<double>(k), p);
                CHECK(v > 0.1);
                CHECK(v < 4.0);
            }
        }
    }

    SUBCASE("quadrature flags non-convergence at the depth cap") {
        // a jump at an irrational point never satisfies the Richardson test
        auto jump = [](double x) { return x < 0.3333333217 ? 0.0 : 1.0; };
        CHECK_THROWS_AS(integrate(jump, 0.0, 1.0, QuadratureOptions{1e-18, 40}), numeric_error);
        CHECK(integrate(jump, 0.0, 1.0, QuadratureOptions{1e-6, 60}) ==
              doctest::Approx(1.0 - 0.3333333217).epsilon(1e-4));
    }

    SUBCASE("profiles without a derivative are rejected") {
        ComparabilitySpec spec;
        spec.factor = [](double) { return 1.0; };
        spec.lipschitz = 1.0;
        spec.lower = 0.9;
        spec.upper = 1.1;
        const auto w = WindingFunction::comparable(1.0, spec);
        CHECK(!w.has_derivative());
        CHECK_THROWS_AS(turn_arclength(w, 1), std::invalid_argument);
    }
}

TEST_CASE("sample_turn") {
    const auto p1 = WindingFunction::polynomial(1.0);
    const auto p2 = WindingFunction::polynomial(2.0);

    SUBCASE("consecutive distances stay under the gap") {
        const auto pts = sample_turn(p1, 1, 0.5);
        REQUIRE(pts.size() >= 2);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(std::hypot(pts[i].cx - pts[i - 1].cx, pts[i].cy - pts[i - 1].cy) <= 0.5 + 1e-12);
        }
        CHECK(pts.front().x == doctest::Approx(turn_lower(1)));
        CHECK(pts.back().x == doctest::Approx(turn_upper(1)));
    }

    SUBCASE("radii confined to the turn's radius range") {
        const auto pts = sample_turn(p1, 10, 1e-3);
        const double r_hi = p1(turn_lower(10));
        const double r_lo = p1(turn_upper(10));
        for (const auto& pt : pts) {
            CHECK(pt.radius >= r_lo - 1e-15);
            CHECK(pt.radius <= r_hi + 1e-15);
        }
    }

    SUBCASE("point count tracks arc length over gap") {
        const double gap = 1e-2;
        const auto pts = sample_turn(p2, 2, gap);
        const double len = turn_arclength(p2, 2);
        const auto n = static_cast<double>(pts.size());
        CHECK(n <= 2.0 * len / gap + 2.0);
        CHECK(n >= 0.5 * len / gap);
    }

    SUBCASE("point cap raises a resource error") {
        CHECK_THROWS_AS(sample_turn(p1, 1, 1e-9, 1000), resource_error);
    }
}

TEST_CASE("winding function invariants") {
    SUBCASE("strict decrease on geometric grids") {
        for (double p : {0.5, 1.0, 2.0}) {
            const auto phi = WindingFunction::polynomial(p);
            double prev = phi(1.0);
            for (int i = 1; i <= 60; ++i) {
                const double x = std::pow(10.0, 8.0 * i / 60.0);
                const double v = phi(x);
                CHECK(v < prev);
                prev = v;
            }
        }
    }

    SUBCASE("log-perturbed decreases past its hump") {
        const auto lp = WindingFunction::log_perturbed(1.0, 1.0);
        const double start = lp.monotone_from();
        CHECK(start == doctest::Approx(std::exp(1.0)));
        double prev = lp(start);
        for (int i = 1; i <= 60; ++i) {
            const double x = start * std::pow(10.0, 8.0 * i / 60.0);
            const double v = lp(x);
            CHECK(v < prev);
            prev = v;
        }
    }

    SUBCASE("phi tends to zero") {
        for (const auto& phi :
             {WindingFunction::polynomial(0.5), WindingFunction::log_perturbed(1.0, 2.0)}) {
            CHECK(phi(1e12) < 1e-4);
        }
    }

    SUBCASE("log-perturbed derivative matches central differences") {
        const auto lp = WindingFunction::log_perturbed(1.5, 2.0);
        for (double x : {2.0, 5.0, 50.0, 5000.0}) {
            const double h = x * 1e-6;
            const double numeric = (lp(x + h) - lp(x - h)) / (2.0 * h);
            CHECK(lp.derivative(x) == doctest::Approx(numeric).epsilon(1e-6));
        }
    }

    SUBCASE("comparable kind verifies its declared bounds") {
        const auto demo = reciprocal_mixed_profile(1.0);
        REQUIRE(demo.spec() != nullptr);
        const double c = demo.spec()->lower;
        const double C = demo.spec()->upper;
        for (int i = 0; i <= 200; ++i) {
            const double x = std::pow(10.0, 6.0 * i / 200.0);
            const double e = demo.comparability(x);
            CHECK(e >= c);
            CHECK(e <= C);
        }
    }

    SUBCASE("comparable derivative matches central differences") {
        const auto demo = reciprocal_mixed_profile(2.0);
        for (double x : {1.5, 3.0, 20.0, 300.0}) {
            const double h = x * 1e-6;
            const double numeric = (demo(x + h) - demo(x - h)) / (2.0 * h);
            CHECK(demo.derivative(x) == doctest::Approx(numeric).epsilon(1e-5));
        }
    }

    SUBCASE("sampled Lipschitz quotient of the comparability factor") {
        const auto demo = reciprocal_mixed_profile(1.0);
        const double L = demo.spec()->lipschitz;
        double px = 1.0, pe = demo.comparability(1.0);
        for (int i = 1; i <= 2000; ++i) {
            const double x = std::pow(10.0, 6.0 * i / 2000.0);
            const double e = demo.comparability(x);
            CHECK(std::abs(e - pe) / (x - px) <= L * (1.0 + 1e-9));
            px = x;
            pe = e;
        }
    }

    SUBCASE("x^-p log x is rejected as comparable") {
        ComparabilitySpec spec;
        spec.factor = [](double x) { return std::log(x); };
        spec.lipschitz = 1.0;
        spec.lower = 0.1;
        spec.upper = 100.0;
        CHECK_THROWS_AS(WindingFunction::comparable(1.0, spec), std::domain_error);
    }
}
