// spiraldim: polynomial-spiral dimension and winding toolkit, table front end.
//
// Emits one CSV/JSON table per command; every estimated column carries its
// closed-form counterpart.  Exit codes: 0 ok, 2 config error, 3 resource
// limit, 4 tolerance failure under --check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spiraldim/dimension.hpp"
#include "spiraldim/errors.hpp"
#include "spiraldim/holder_bounds.hpp"
#include "spiraldim/holder_estimators.hpp"
#include "spiraldim/lipschitz.hpp"
#include "spiraldim/winding_map.hpp"
#include "table.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace spiraldim;
using cli::Table;

struct CommonOpts {
    std::string output;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool check = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("-o,--output", c.output, "output path ('-' or empty for stdout)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", c.seed, "seed for randomized scans");
    cmd->add_flag("--check", c.check, "fail (exit 4) if estimates exceed their tolerances");
}

void emit(Table& t, const CommonOpts& c) {
    const std::string text = (c.format == "json") ? cli::render_json(t, kVersion)
                                                  : cli::render_csv(t, kVersion);
    cli::write_output(text, c.output);
}

int status_from_check(bool ok) { return ok ? 0 : 4; }

double default_spectrum_rmin(double p) {
    if (std::abs(p - 1.0) <= 0.1) return 1e-16;
    if (p >= 1.5) return 1e-13;
    return 1e-10;
}

// ---------------------------------------------------------------- commands

int run_dims(double p, double rmin, double rmax, int per_decade, const std::string& method,
             const CommonOpts& c) {
    const auto grid = geometric_scales(rmin, rmax, per_decade);
    const auto m = method == "grid" ? CoverMethod::grid : CoverMethod::analytic;
    const auto est = estimate_box_dimension(p, grid, m);

    std::optional<std::vector<std::array<double, 2>>> pts;
    if (m == CoverMethod::grid) pts = sampled_spiral(p, rmin);

    Table t;
    t.add_meta("command", "dims");
    t.add_meta("p", p);
    t.add_meta("rmin", rmin);
    t.add_meta("rmax", rmax);
    t.add_meta("per_decade", static_cast<double>(per_decade));
    t.add_meta("method", method);
    t.add_meta("seed", static_cast<double>(c.seed));
    t.columns = {"r", "count", "fitted_slope", "closed_form"};
    for (double r : grid) {
        const auto rec = (m == CoverMethod::grid) ? grid_cover_count(*pts, r)
                                                  : cover_count_analytic(p, r);
        t.rows.push_back({r, static_cast<double>(rec.count), est.value, est.closed_form});
    }
    emit(t, c);
    if (!c.check) return 0;
    const double tol = (std::abs(p - 1.0) <= 0.1) ? 0.07 : (m == CoverMethod::grid ? 0.1 : 0.05);
    return status_from_check(std::abs(est.value - est.closed_form) <= tol);
}

int run_spectrum(double p, const std::string& theta_grid, double rmin, double rmax,
                 int per_decade, const std::string& method, const CommonOpts& c) {
    const auto thetas = cli::parse_grid(theta_grid);
    const auto scales = geometric_scales(rmin, rmax, per_decade);
    const auto m = method == "grid" ? CoverMethod::grid : CoverMethod::analytic;

    Table t;
    t.add_meta("command", "spectrum");
    t.add_meta("p", p);
    t.add_meta("theta_grid", theta_grid);
    t.add_meta("rmin", rmin);
    t.add_meta("rmax", rmax);
    t.add_meta("per_decade", static_cast<double>(per_decade));
    t.add_meta("method", method);
    t.add_meta("seed", static_cast<double>(c.seed));
    t.columns = {"theta", "estimate", "closed_form", "bound_lower", "bound_upper"};

    bool ok = true;
    for (double theta : thetas) {
        const auto est = estimate_spectrum(p, theta, scales, m);
        const double lower = box_dimension(p);
        const double upper = std::min(box_dimension(p) / (1.0 - theta), 2.0);
        t.rows.push_back({theta, est.value, est.closed_form, lower, upper});
        if (std::abs(est.value - est.closed_form) > 0.07) ok = false;
    }
    emit(t, c);
    return c.check ? status_from_check(ok) : 0;
}

int run_holder(double p, const std::string& t_grid, double ymin, double ymax, int per_decade,
               const CommonOpts& c) {
    const auto ts = cli::parse_grid(t_grid);
    const auto y_grid = geometric_grid(ymin, ymax, per_decade);
    const auto m_grid = default_m_grid();
    EstimatorOptions opt;
    opt.seed = c.seed;

    Table t;
    t.add_meta("command", "holder");
    t.add_meta("p", p);
    t.add_meta("t_grid", t_grid);
    t.add_meta("ymin", ymin);
    t.add_meta("ymax", ymax);
    t.add_meta("per_decade", static_cast<double>(per_decade));
    t.add_meta("seed", static_cast<double>(c.seed));
    t.columns = {"t", "alpha_sharp", "beta_sharp", "alpha_hat", "beta_hat"};

    bool ok = true;
    for (double tw : ts) {
        const auto map = WindingMap::twist(p, tw);
        const auto [alpha, beta] = map.sharp_exponents();
        const auto fw = estimate_forward_exponent(map, y_grid, opt);
        const auto inv = estimate_inverse_exponent(map, y_grid, m_grid, opt);
        t.rows.push_back({tw, alpha, beta, fw.exponent, inv.exponent});
        if (std::abs(fw.exponent - alpha) > 0.02) ok = false;
        if (std::abs(inv.exponent - beta) > 0.1 * beta) ok = false;
    }
    emit(t, c);
    return c.check ? status_from_check(ok) : 0;
}

int run_bounds(double p, std::optional<double> beta, const std::string& beta_grid,
               const std::string& p_grid, const CommonOpts& c) {
    Table t;
    t.add_meta("command", "bounds");
    t.columns = {"value", "sharp", "spectrum_derived", "box_derived"};

    if (!p_grid.empty()) {
        if (!beta.has_value()) throw std::domain_error("--p-grid needs --beta");
        t.add_meta("beta", *beta);
        t.add_meta("p_grid", p_grid);
        for (double pv : cli::parse_grid(p_grid)) {
            const auto b = alpha_upper_bounds(pv, *beta);
            t.rows.push_back({pv, b.sharp, b.spectrum, b.box});
        }
    } else if (!beta_grid.empty()) {
        t.add_meta("p", p);
        t.add_meta("beta_grid", beta_grid);
        for (double bv : cli::parse_grid(beta_grid)) {
            const auto b = alpha_upper_bounds(p, bv);
            t.rows.push_back({bv, b.sharp, b.spectrum, b.box});
        }
    } else {
        if (!beta.has_value()) throw std::domain_error("bounds needs --beta or a grid");
        t.add_meta("p", p);
        t.add_meta("beta", *beta);
        const auto b = alpha_upper_bounds(p, *beta);
        t.rows.push_back({*beta, b.sharp, b.spectrum, b.box});
    }
    emit(t, c);
    if (!c.check) return 0;
    bool ok = true;
    for (const auto& row : t.rows) {
        ok = ok && row[1] <= row[2] + 1e-12 && row[2] <= row[3] + 1e-12;
    }
    return status_from_check(ok);
}

int run_length(double p, std::vector<double> Ks, const CommonOpts& c) {
    if (Ks.empty()) Ks = {100.0, 10000.0, 1000000.0};
    Table t;
    t.add_meta("command", "length");
    t.add_meta("p", p);
    t.columns = {"K", "partial_sum", "growth_ratio", "last_increment"};
    bool ok = true;
    for (double K : Ks) {
        const auto rep = length_classification(p, static_cast<std::int64_t>(K));
        t.rows.push_back({K, rep.partial_sum, rep.growth_ratio, rep.last_increment});
        if (c.check) {
            if (p == 1.0 && !(rep.growth_ratio >= 1.0 && rep.growth_ratio <= 1.6)) ok = false;
            if (p > 1.0 && K >= 1e5 && !(rep.last_increment < 1e-8)) ok = false;
        }
    }
    t.add_meta("verdict", p > 1.0 ? "finite" : "infinite");
    emit(t, c);
    return c.check ? status_from_check(ok) : 0;
}

int run_equivalence(double p, const std::string& profile, std::int64_t budget,
                    const CommonOpts& c) {
    WindingFunction phi = profile == "identity" ? WindingFunction::polynomial(p)
                                                : reciprocal_mixed_profile(p);
    EquivalenceMap map(std::move(phi));
    const auto rep = distortion_stats(map, c.seed, budget);

    Table t;
    t.add_meta("command", "equivalence");
    t.add_meta("p", p);
    t.add_meta("profile", profile);
    t.add_meta("budget", static_cast<double>(budget));
    t.add_meta("seed", static_cast<double>(c.seed));
    t.columns = {"min_ratio", "max_ratio", "spread", "pairs", "transverse_pairs",
                 "aligned_pairs", "near_pairs"};
    t.rows.push_back({rep.min_ratio, rep.max_ratio, rep.max_ratio / rep.min_ratio,
                      static_cast<double>(rep.pair_budget),
                      static_cast<double>(rep.transverse_pairs),
                      static_cast<double>(rep.aligned_pairs),
                      static_cast<double>(rep.near_pairs)});
    emit(t, c);
    return c.check ? status_from_check(rep.max_ratio / rep.min_ratio < 1e3) : 0;
}

int run_construct_map(double p, double alpha, int samples, double ymin, double ymax,
                      int per_decade, const CommonOpts& c) {
    const auto map = WindingMap::piecewise(p, alpha);
    const auto y_grid = geometric_grid(ymin, ymax, per_decade);
    EstimatorOptions opt;
    opt.seed = c.seed;
    const auto fw = estimate_forward_exponent(map, y_grid, opt);
    const auto inv = estimate_inverse_exponent(map, y_grid, default_m_grid(), opt);
    const auto [alpha_target, beta_target] = map.sharp_exponents();

    Table t;
    t.add_meta("command", "construct-map");
    t.add_meta("p", p);
    t.add_meta("alpha", alpha);
    t.add_meta("samples", static_cast<double>(samples));
    t.add_meta("seed", static_cast<double>(c.seed));
    t.add_meta("alpha_target", alpha_target);
    t.add_meta("alpha_hat", fw.exponent);
    t.add_meta("beta_target", beta_target);
    t.add_meta("beta_hat", inv.exponent);
    t.columns = {"x", "argument", "radius", "cx", "cy"};
    for (int i = 0; i < samples; ++i) {
        const double x = ymin * std::pow(ymax / ymin, (i + 0.5) / samples);
        const auto pt = map.forward(x);
        t.rows.push_back({x, map.argument_of(x), map.radius_of(x), pt[0], pt[1]});
    }
    emit(t, c);
    if (!c.check) return 0;
    const bool ok = std::abs(fw.exponent - alpha_target) <= 0.03 &&
                    std::abs(inv.exponent - beta_target) <= 0.1 * beta_target;
    return status_from_check(ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial spiral toolkit: dimensions, winding maps, distortion"};
    app.require_subcommand(1);

    // dims
    double p = 1.0, rmin = 1e-10, rmax = 1e-2, ymin = 1e-7, ymax = 1e-1;
    int per_decade = 8;
    std::string method = "analytic";
    CommonOpts c_dims;
    auto* dims = app.add_subcommand("dims", "box-counting dimension of the spiral");
    dims->add_option("--p", p, "winding exponent")->required();
    dims->add_option("--rmin", rmin, "finest scale");
    dims->add_option("--rmax", rmax, "coarsest scale");
    dims->add_option("--per-decade", per_decade, "scales per decade");
    dims->add_option("--method", method)->check(CLI::IsMember({"analytic", "grid"}));
    add_common(dims, c_dims);

    // spectrum
    double sp = 1.0, srmin = 0.0, srmax = 1e-2;
    int sper = 8;
    std::string theta_grid = "0.05:0.95:0.05", smethod = "analytic";
    CommonOpts c_spec;
    auto* spec = app.add_subcommand("spectrum", "Assouad spectrum across a theta grid");
    spec->add_option("--p", sp)->required();
    spec->add_option("--theta-grid", theta_grid, "start:stop:step");
    spec->add_option("--rmin", srmin, "finest scale (0 = per-p default)");
    spec->add_option("--rmax", srmax);
    spec->add_option("--per-decade", sper);
    spec->add_option("--method", smethod)->check(CLI::IsMember({"analytic", "grid"}));
    add_common(spec, c_spec);

    // holder
    double hp = 1.0, hymin = 1e-7, hymax = 1e-1;
    int hper = 8;
    std::string t_grid = "0.1:6:0.1";
    CommonOpts c_holder;
    auto* holder = app.add_subcommand("holder", "sharp and fitted Holder exponents of twist maps");
    holder->add_option("--p", hp)->required();
    holder->add_option("--t-grid", t_grid, "start:stop:step");
    holder->add_option("--ymin", hymin);
    holder->add_option("--ymax", hymax);
    holder->add_option("--per-decade", hper);
    add_common(holder, c_holder);

    // bounds
    double bp = 1.0;
    std::optional<double> bbeta;
    std::string beta_grid, p_grid;
    CommonOpts c_bounds;
    auto* bounds = app.add_subcommand("bounds", "alpha upper bounds (sharp / spectrum / box)");
    bounds->add_option("--p", bp);
    bounds->add_option("--beta", bbeta);
    bounds->add_option("--beta-grid", beta_grid, "start:stop:step");
    bounds->add_option("--p-grid", p_grid, "start:stop:step");
    add_common(bounds, c_bounds);

    // length
    double lp = 1.0;
    std::vector<double> Ks;
    CommonOpts c_len;
    auto* length = app.add_subcommand("length", "partial arc-length sums and growth diagnostics");
    length->add_option("--p", lp)->required();
    length->add_option("--K", Ks, "turn counts (repeatable)");
    add_common(length, c_len);

    // equivalence
    double ep = 1.0;
    std::int64_t budget = 1'000'000;
    std::string profile = "mixed";
    CommonOpts c_eq;
    auto* equiv = app.add_subcommand("equivalence", "bi-Lipschitz distortion of the radial map");
    equiv->add_option("--p", ep)->required();
    equiv->add_option("--profile", profile)->check(CLI::IsMember({"mixed", "identity"}));
    equiv->add_option("--budget", budget);
    add_common(equiv, c_eq);

    // construct-map
    double cp = 1.0, calpha = 0.6, cymin = 9.5e-5, cymax = 0.95;
    int csamples = 512, cper = 8;
    CommonOpts c_cm;
    auto* cmap = app.add_subcommand("construct-map",
                                    "blockwise map onto the spiral with exponent certificates");
    cmap->add_option("--p", cp)->required();
    cmap->add_option("--alpha", calpha)->required();
    cmap->add_option("--samples", csamples);
    cmap->add_option("--ymin", cymin);
    cmap->add_option("--ymax", cymax);
    cmap->add_option("--per-decade", cper);
    add_common(cmap, c_cm);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dims->parsed()) return run_dims(p, rmin, rmax, per_decade, method, c_dims);
        if (spec->parsed()) {
            if (srmin == 0.0) srmin = default_spectrum_rmin(sp);
            return run_spectrum(sp, theta_grid, srmin, srmax, sper, smethod, c_spec);
        }
        if (holder->parsed()) return run_holder(hp, t_grid, hymin, hymax, hper, c_holder);
        if (bounds->parsed()) return run_bounds(bp, bbeta, beta_grid, p_grid, c_bounds);
        if (length->parsed()) return run_length(lp, Ks, c_len);
        if (equiv->parsed()) return run_equivalence(ep, profile, budget, c_eq);
        if (cmap->parsed())
            return run_construct_map(cp, calpha, csamples, cymin, cymax, cper, c_cm);
    } catch (const resource_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"code\":3}\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"code\":2}\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"code\":2}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"code\":3}\n";
        return 3;
    }
    return 2;
}
