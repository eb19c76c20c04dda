#pragma once

// darboux command-line front end. run_cli() is the whole program; main()
// only forwards argv so the tests can drive it in-process.
//
// Exit codes: 0 success, 1 verification or internal failure, 2 usage error.
// Log verbosity: DARBOUX_LOG = off | error | warn | info | debug (stderr).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "darboux/geometry.hpp"
#include "darboux/separability.hpp"
#include "darboux/spectral.hpp"
#include "darboux/verify.hpp"
#include "table.hpp"

namespace darboux::cli {

/// Bad flags or flag values; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "x", "x,y,z" or "lo:hi:step" (inclusive; empty when hi < lo).
inline std::vector<double> parse_range(const std::string& text, const std::string& flag) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) throw UsageError(flag + ": not a number: '" + s + "'");
        return v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError(flag + ": range must be lo:hi:step");
        const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0)) throw UsageError(flag + ": range step must be positive");
        if (hi < lo) return out;
        const auto n = static_cast<long>(std::floor((hi - lo) / step * (1.0 + 1e-12))) + 1;
        if (n > 10'000'000) throw UsageError(flag + ": range has too many points");
        for (long i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
    return out;
}

struct SpaceFlags {
    std::string space;
    std::optional<double> a, b;
    double hbar = 1.0, mass = 1.0;

    SpaceParams resolve() const {
        const PhysicalConstants c{hbar, mass};
        SpaceParams p;
        if (space == "d3d1") p = SpaceParams::d3d1(a.value_or(1.0), c);
        else if (space == "d3d2") p = SpaceParams::d3d2(a.value_or(-1.0), b.value_or(1.0), c);
        else throw UsageError("--space must be d3d1 or d3d2");
        try {
            p.validate();
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        return p;
    }

    void describe(nlohmann::ordered_json& j, const SpaceParams& p) const {
        j["space"] = to_string(p.space);
        j["a"] = p.a;
        if (p.space == Space::D3dII) j["b"] = p.b;
        j["hbar"] = p.constants.hbar;
        j["mass"] = p.constants.mass;
    }
};

struct OutputFlags {
    std::string format = "csv";
    std::string output;
};

inline void add_space_flags(CLI::App* app, SpaceFlags& f, const std::string& default_space, bool required) {
    auto* opt = app->add_option("--space", f.space, "d3d1 or d3d2")->check(CLI::IsMember({"d3d1", "d3d2"}));
    if (required) opt->required();
    else f.space = default_space;
    app->add_option("--a", f.a, "parameter a (default 1 for d3d1, -1 for d3d2)");
    app->add_option("--b", f.b, "parameter b, d3d2 only (default 1)");
    app->add_option("--hbar", f.hbar, "Planck constant (default 1)");
    app->add_option("--mass", f.mass, "mass (default 1)");
}

inline void add_output_flags(CLI::App* app, OutputFlags& f) {
    app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--output,-o", f.output, "output file (default stdout)");
}

inline void emit(const Table& t, const OutputFlags& f, std::ostream& out) {
    std::ostringstream buf;
    if (f.format == "json") write_json(t, buf);
    else write_csv(t, buf);
    if (f.output.empty()) {
        out << buf.str();
        return;
    }
    std::ofstream file(f.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + f.output);
    file << buf.str();
}

inline std::vector<double> domain_checked(const std::string& text, const std::string& flag, const SpaceParams& p,
                                          bool allow_wall = false) {
    auto values = parse_range(text, flag);
    for (double u : values) {
        const bool ok = p.contains(u) || (allow_wall && p.space == Space::D3dI && u == p.a);
        if (!ok)
            throw UsageError(flag + ": u = " + format_number(u) + " outside the domain (u " + (allow_wall ? ">= " : "> ") +
                             format_number(p.u_min()) + ")");
    }
    return values;
}

// ---------------------------------------------------------------------------

struct GeometryCmd {
    SpaceFlags space;
    OutputFlags out;
    std::string u = "1";

    Table run() const {
        const auto p = space.resolve();
        const auto us = domain_checked(u, "--u", p);
        Table t;
        t.command = "geometry";
        space.describe(t.params, p);
        t.params["u"] = u;
        t.columns = {"u", "f2", "gamma_u", "dv", "dv1", "dv2", "r", "counterterm"};
        for (double x : us) {
            const Point3 pt{x, 0.0, 0.0};
            const auto q = quantum_potential(p, pt);
            // keep the curvature stencil inside the domain near the wall
            const double h = std::min(1e-3, 0.25 * (x - p.u_min()));
            const auto cr = scalar_curvature(p, pt, h);
            t.add({x, conformal_factor_sq(p, pt), gamma_u(p, pt), q.dv_total, q.dv1, q.dv2, cr.r_closed, cr.counterterm});
        }
        return t;
    }
};

struct SpectrumCmd {
    SpaceFlags space;
    OutputFlags out;
    std::string p = "0:2:1";

    Table run() const {
        const auto params = space.resolve();
        if (params.space != Space::D3dII) throw UsageError("spectrum: requires --space d3d2");
        if (!(params.a < 0.0)) throw UsageError("spectrum: requires a < 0 (continuous spectrum of D3dII)");
        const auto ps = parse_range(p, "--p");
        for (double x : ps)
            if (!(x >= 0.0)) throw UsageError("--p: momentum must be non-negative");
        Table t;
        t.command = "spectrum";
        space.describe(t.params, params);
        t.params["p"] = p;
        t.columns = {"p", "E"};
        for (double x : ps) t.add({x, dispersion(x, params).energy});
        return t;
    }
};

struct GreenCmd {
    SpaceFlags space;
    OutputFlags out;
    std::string u1 = "2", u2 = "3";
    double energy = -1.0;
    int lv = 0, lw = 0;
    std::optional<double> kv, kw;
    int cutoff = 10;
    double dv = 0.0, dw = 0.0;
    double ksq = 1.0;
    double tol = 1e-6;

    ModeIndex mode() const {
        if (kv || kw) return ModeIndex::continuous(kv.value_or(0.0), kw.value_or(0.0));
        return ModeIndex::discrete(lv, lw);
    }

    static std::string status_of(const GreenEval& g, double tol = std::numeric_limits<double>::infinity()) {
        if (g.regime == GreenRegime::above_threshold_rejected) return "rejected";
        return g.abs_err_estimate <= tol ? "ok" : "unconverged";
    }

    Table d3d1_mode() const {
        const auto p = space.resolve();
        const auto a1 = domain_checked(u1, "--u1", p, true), a2 = domain_checked(u2, "--u2", p, true);
        const auto m = mode();
        Table t;
        t.command = "green d3d1-mode";
        space.describe(t.params, p);
        t.params["E"] = energy;
        t.params["L2"] = m.lsq();
        t.columns = {"u1", "u2", "E", "L2", "value", "err_estimate", "status"};
        for (double x1 : a1)
            for (double x2 : a2) {
                const auto g = green_d3di_mode(x2, x1, m, energy, p);
                t.add({x1, x2, energy, m.lsq(), g.value.real(), g.abs_err_estimate, status_of(g)});
            }
        return t;
    }

    Table d3d1_sum() const {
        const auto p = space.resolve();
        if (cutoff < 0) throw UsageError("--cutoff must be non-negative");
        const auto a1 = domain_checked(u1, "--u1", p, true), a2 = domain_checked(u2, "--u2", p, true);
        Table t;
        t.command = "green d3d1-sum";
        space.describe(t.params, p);
        t.params["E"] = energy;
        t.params["cutoff"] = cutoff;
        t.params["dv"] = dv;
        t.params["dw"] = dw;
        t.columns = {"u1", "u2", "dv", "dw", "E", "value_re", "value_im", "err_estimate", "status"};
        for (double x1 : a1)
            for (double x2 : a2) {
                std::string status;
                GreenEval g;
                try {
                    g = green_d3di_sum({x2, dv, dw}, {x1, 0.0, 0.0}, energy, cutoff, p);
                    status = status_of(g);
                } catch (const ConvergenceError&) {
                    g = GreenEval::rejected();
                    status = "unconverged";
                }
                t.add({x1, x2, dv, dw, energy, g.value.real(), g.value.imag(), g.abs_err_estimate, status});
            }
        return t;
    }

    Table d3d2_mode() const {
        const auto p = space.resolve();
        if (!(p.a < 0.0)) throw UsageError("green d3d2-mode: requires a < 0");
        if (!(tol > 0.0)) throw UsageError("--tol must be positive");
        const auto a1 = domain_checked(u1, "--u1", p), a2 = domain_checked(u2, "--u2", p);
        if (energy < continuum_threshold(p) && !(detail::d3dii_kappa_sq(ksq, energy, p) > 0.0))
            throw UsageError("green d3d2-mode: needs K2 - 2 m b E / hbar^2 > 0");
        Table t;
        t.command = "green d3d2-mode";
        space.describe(t.params, p);
        t.params["E"] = energy;
        t.params["K2"] = ksq;
        t.params["tol"] = tol;
        t.columns = {"u1", "u2", "E", "K2", "value", "err_estimate", "status"};
        for (double x1 : a1)
            for (double x2 : a2) {
                auto eval = [&]() -> std::pair<GreenEval, std::string> {
                    try {
                        // fixed (larger, smaller) argument order so u1 <-> u2 swaps give identical bits
                        const auto g = green_d3dii_mode(std::max(x1, x2), std::min(x1, x2), ksq, energy, p, tol);
                        return {g, status_of(g, tol)};
                    } catch (const ConvergenceError& e) {
                        auto g = GreenEval::rejected();
                        g.value = {e.partial, 0.0};
                        g.abs_err_estimate = e.achieved;
                        return {g, "unconverged"};
                    }
                };
                const auto [g, status] = eval();
                t.add({x1, x2, energy, ksq, g.value.real(), g.abs_err_estimate, status});
            }
        return t;
    }
};

struct VerifyCmd {
    OutputFlags out;
    std::string suite = "all";
    std::uint64_t seed = 7;
    double k13_perturbation = 0.0;

    Table run(bool& all_pass) const {
        verify::Options opt;
        opt.seed = seed;
        opt.k13_scale = 1.0 + k13_perturbation;
        Table t;
        t.command = "verify";
        t.params["suite"] = suite;
        t.params["seed"] = seed;
        t.params["k13_perturbation"] = k13_perturbation;
        t.columns = {"criterion", "title", "check", "pass", "measured", "tolerance", "detail"};
        all_pass = true;
        for (int id : verify::suite_criteria(suite)) {
            spdlog::info("verify: criterion {}", id);
            const auto c = verify::run_criterion(id, opt);
            all_pass = all_pass && c.pass();
            for (const auto& k : c.checks)
                t.add({std::int64_t(id), c.title, k.name, k.pass, k.measured, k.tolerance, k.detail});
        }
        return t;
    }
};

struct SeparabilityCmd {
    SpaceFlags space;
    OutputFlags out;
    int points = 20;
    std::uint64_t seed = 7;
    bool control = false;

    Table run() const {
        const auto p = space.resolve();
        if (points < 1) throw UsageError("--points must be at least 1");
        Table t;
        t.command = "separability";
        space.describe(t.params, p);
        t.params["points"] = points;
        t.params["seed"] = seed;
        t.columns = {"chart", "coordinates", "u_axis", "diag_violation", "levi_civita_violation", "verdict",
                     "points_tested", "seed"};
        auto reports = separability_report(p, points, seed);
        if (control) reports.push_back(audit_chart(p, make_chart(ChartId::sheared_control), points, seed));
        for (const auto& r : reports) {
            const auto chart = make_chart(r.chart);
            t.add({std::string(to_string(r.chart)), chart.coordinates,
                   std::string(u_axis(p.space, r.chart) == UAxis::x ? "x" : "z"), r.diag_violation,
                   r.levi_civita_violation, std::string(to_string(r.verdict)), std::int64_t(r.points_tested),
                   std::int64_t(r.seed)});
        }
        return t;
    }
};

inline void configure_logging(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("darboux", sink);
    logger->set_pattern("[%l] %v");
    const char* env = std::getenv("DARBOUX_LOG");
    logger->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    spdlog::set_default_logger(logger);
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    configure_logging(err);
    CLI::App app{"Quantum mechanics on the 3D Darboux spaces: evaluation, verification and separability reports"};
    app.name("darboux");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    GeometryCmd geo;
    auto* geo_app = app.add_subcommand("geometry", "metric, quantum potential and curvature counterterm on a u grid");
    add_space_flags(geo_app, geo.space, "", true);
    add_output_flags(geo_app, geo.out);
    geo_app->add_option("--u", geo.u, "u values: x, x,y,... or lo:hi:step");

    SpectrumCmd spec;
    auto* spec_app = app.add_subcommand("spectrum", "continuous spectrum E(p) of D3dII");
    add_space_flags(spec_app, spec.space, "d3d2", false);
    add_output_flags(spec_app, spec.out);
    spec_app->add_option("--p", spec.p, "p values: x, x,y,... or lo:hi:step");

    GreenCmd green;
    auto* green_app = app.add_subcommand("green", "mode Green functions");
    green_app->require_subcommand(1);
    auto* g1 = green_app->add_subcommand("d3d1-mode", "D3dI mode Green function with the Dirichlet wall at u = a");
    auto* gs = green_app->add_subcommand("d3d1-sum", "D3dI Green function summed over modes");
    auto* g2 = green_app->add_subcommand("d3d2-mode", "D3dII mode Green function from the p-integral");
    for (auto* s : {g1, gs}) add_space_flags(s, green.space, "d3d1", false);
    add_space_flags(g2, green.space, "d3d2", false);
    for (auto* s : {g1, gs, g2}) {
        add_output_flags(s, green.out);
        s->add_option("--u1", green.u1, "u1 values");
        s->add_option("--u2", green.u2, "u2 values");
        s->add_option("--E", green.energy, "energy");
    }
    g1->add_option("--lv", green.lv, "integer mode number in v");
    g1->add_option("--lw", green.lw, "integer mode number in w");
    g1->add_option("--kv", green.kv, "continuous wave number in v");
    g1->add_option("--kw", green.kw, "continuous wave number in w");
    gs->add_option("--cutoff", green.cutoff, "largest |l_v|, |l_w| summed");
    gs->add_option("--dv", green.dv, "v2 - v1");
    gs->add_option("--dw", green.dw, "w2 - w1");
    g2->add_option("--K2", green.ksq, "K^2 = k_v^2 + k_w^2");
    g2->add_option("--tol", green.tol, "absolute tolerance of the p-integral");

    VerifyCmd ver;
    auto* ver_app = app.add_subcommand("verify", "run acceptance suites");
    add_output_flags(ver_app, ver.out);
    ver_app->add_option("--suite", ver.suite, "geometry, specfun, green, mpt, separability or all")
        ->check(CLI::IsMember(verify::suite_names()));
    ver_app->add_option("--seed", ver.seed, "seed of the counter-based generator");
    ver_app->add_option("--inject-k13-perturbation", ver.k13_perturbation,
                        "test hook: scale every K_{1/3} by (1 + value)");

    SeparabilityCmd sep;
    auto* sep_app = app.add_subcommand("separability", "Levi-Civita separability audit of the Euclidean charts");
    add_space_flags(sep_app, sep.space, "", true);
    add_output_flags(sep_app, sep.out);
    sep_app->add_option("--points", sep.points, "random points per chart");
    sep_app->add_option("--seed", sep.seed, "seed of the counter-based generator");
    sep_app->add_flag("--control", sep.control, "append the sheared control chart");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*geo_app) emit(geo.run(), geo.out, out);
        else if (*spec_app) emit(spec.run(), spec.out, out);
        else if (*g1) emit(green.d3d1_mode(), green.out, out);
        else if (*gs) emit(green.d3d1_sum(), green.out, out);
        else if (*g2) emit(green.d3d2_mode(), green.out, out);
        else if (*ver_app) {
            bool pass = false;
            emit(ver.run(pass), ver.out, out);
            if (!pass) {
                err << "verify: at least one check failed\n";
                return 1;
            }
        } else if (*sep_app) emit(sep.run(), sep.out, out);
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace darboux::cli
