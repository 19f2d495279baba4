// heatjet command-line front end: batch demonstrations, tables, and the
// acceptance suite. Exit codes: 0 success, 1 verification failure, 2 usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heatjet/catalog.hpp"
#include "heatjet/distribution.hpp"
#include "heatjet/heat_identities.hpp"
#include "heatjet/json_io.hpp"
#include "heatjet/verify.hpp"

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

struct GridSpec {
    double lo = -4.0, hi = 4.0, step = 0.05;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const size_t c1 = s.find(':');
    const size_t c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid must be lo:hi:step");
    g.lo = std::stod(s.substr(0, c1));
    g.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    g.step = std::stod(s.substr(c2 + 1));
    if (!(g.step > 0.0) || !(g.lo < g.hi)) throw std::invalid_argument("grid must satisfy lo < hi, step > 0");
    return g;
}

heatjet::Distribution parse_initial(const std::string& s) {
    if (s == "dirac") return heatjet::Distribution::dirac();
    if (s == "dirac1") return heatjet::Distribution::dirac(0.0, 1, 1.0);
    // otherwise a named test input with compact support becomes a density
    heatjet::PairingInput phi = heatjet::make_phi(s);
    if (phi.decay() != heatjet::Decay::compact)
        throw std::invalid_argument("evolve: initial density must have compact support");
    heatjet::Density d;
    d.rho = [phi](double x) { return phi(x); };
    d.decay = heatjet::Decay::compact;
    d.lo = phi.support().lo;
    d.hi = phi.support().hi;
    return heatjet::Distribution::from_density(std::move(d));
}

int cmd_weil_demo(int l, int r, const std::vector<std::string>& gens, const std::string& out) {
    std::vector<heatjet::TruncatedPoly> parsed;
    for (const auto& g : gens) parsed.push_back(heatjet::parse_poly(g, l, r));
    auto w = heatjet::build_algebra(l, r, parsed);
    json j = heatjet::to_json(*w);

    // small demonstration: membership of each generator and the reduction of e^{s_1}
    json demo;
    for (size_t i = 0; i < parsed.size(); ++i) {
        const heatjet::TruncatedPoly p = parsed[i];
        heatjet::FunctionOracle f(
            l, [p](std::span<const double> x) { return p.eval(x); });
        f.with_partials([p](const heatjet::MultiIndex& a, std::span<const double>) {
            return p.derivative_at_zero(a);
        });
        demo["generator_membership"].push_back(heatjet::weak_membership(f, *w, 1e-9));
    }
    if (l >= 1) {
        heatjet::FunctionOracle e1(l, [](std::span<const double> x) { return std::exp(x[0]); });
        e1.with_partials([](const heatjet::MultiIndex& a, std::span<const double> x) {
            for (int i = 1; i < a.vars(); ++i)
                if (a[i] > 0) return 0.0;
            return std::exp(x[0]);
        });
        std::vector<double> coords;
        for (const auto& d : w->dual_ops()) coords.push_back(d.apply(e1));
        demo["exp_s1_class"] = heatjet::to_json(w->element(std::move(coords)));
        demo["exp_s1_reduction_max_violation"] = heatjet::reduction_check(e1, *w).max_violation;
    }
    j["demo"] = demo;
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int cmd_smoothness(const std::string& name, int order, double tol, const std::string& out,
                   const std::string& csv) {
    heatjet::HalfLineFn f = heatjet::make_halfline(name);
    heatjet::SmoothnessReport rep = heatjet::analyze_halfline(f, order, tol);
    json j = heatjet::to_json(rep);
    j["function"] = name;
    write_text(out, j.dump(2) + "\n");
    if (!csv.empty()) {
        std::string body = "k,j,t,estimate\n";
        for (const auto& e : rep.seeley)
            for (size_t i = 0; i < e.ladder.size(); ++i)
                body += std::to_string(e.k) + "," + std::to_string(i + 4) + "," + fmt(e.ts[i]) + "," +
                        fmt(e.ladder[i]) + "\n";
        write_text(csv, body);
    }
    return 0;
}

int cmd_lubs(const std::string& family, const std::string& out) {
    heatjet::PlotFamily f = heatjet::make_family(family);
    heatjet::LubsReport rep = heatjet::lubs_check(f);
    std::string body;
    if (rep.status == heatjet::LubsReport::Status::violation) {
        heatjet::DiscontinuityReport demo = heatjet::separating_discontinuity_demo(f);
        body = "k,t_k,x_k,c_k,T\n";
        int k = 1;
        for (const auto& row : demo.rows)
            body += std::to_string(k++) + "," + fmt(row.t) + "," + fmt(row.x) + "," + fmt(row.c) + "," +
                    fmt(row.functional_value) + "\n";
        std::cerr << "family '" << family << "': uniform support fails near t0 = " << fmt(demo.t0)
                  << "; T(f(t0,.)) = " << fmt(demo.value_at_t0) << "\n";
    } else {
        body = "t,v_lo,v_hi,c\n";
        for (const auto& e : rep.cover)
            body += fmt(e.t) + "," + fmt(e.v_lo) + "," + fmt(e.v_hi) + "," + fmt(e.c) + "\n";
        std::cerr << "family '" << family << "': uniformly bounded support ("
                  << (rep.status == heatjet::LubsReport::Status::bounded_with_witness ? "witnessed"
                                                                                      : "scanned")
                  << ")\n";
    }
    write_text(out, body);
    return 0;
}

int cmd_heat_table(const std::string& phi_spec, double tmin, double tmax, int steps,
                   const heatjet::QuadratureConfig& q, const std::string& out) {
    heatjet::PairingInput phi = heatjet::make_phi(phi_spec);
    heatjet::PhiCurve curve(phi, q);
    std::string body = "t,phi\n";
    for (int i = 0; i <= steps; ++i) {
        const double t = tmin + (tmax - tmin) * i / steps;
        body += fmt(t) + "," + fmt(curve(t)) + "\n";
    }
    write_text(out, body);
    return 0;
}

int cmd_limit_table(const std::string& phi_spec, int jmin, int jmax, const heatjet::QuadratureConfig& q,
                    const std::string& out) {
    heatjet::PairingInput phi = heatjet::make_phi(phi_spec);
    heatjet::LimitLadder lad = heatjet::limit_lemma_check(phi, q, jmin, jmax);
    std::string body = "j,t,value\n";
    for (size_t i = 0; i < lad.ts.size(); ++i)
        body += std::to_string(jmin + static_cast<int>(i)) + "," + fmt(lad.ts[i]) + "," +
                fmt(lad.values[i]) + "\n";
    write_text(out, body);
    std::cerr << "extrapolated " << fmt(lad.extrapolated) << ", phi''(0) = " << fmt(lad.target)
              << ", residual " << fmt(lad.residual) << "\n";
    return 0;
}

int cmd_evolve(const std::string& initial, double t, const std::string& grid,
               const heatjet::QuadratureConfig& q, const std::string& out) {
    heatjet::Distribution t0 = parse_initial(initial);
    heatjet::Distribution evolved = heatjet::heat_evolve(t0, t, q);
    const GridSpec g = parse_grid(grid);
    std::string body = "t,x,density\n";
    for (double x = g.lo; x <= g.hi + 1e-12; x += g.step)
        body += fmt(t) + "," + fmt(x) + "," + fmt(evolved.density().rho(x)) + "\n";
    write_text(out, body);
    return 0;
}

int cmd_verify(const heatjet::verify::Options& opt, const std::string& out) {
    heatjet::verify::Report rep = heatjet::verify::run_acceptance(opt);
    json j;
    j["schema"] = "heatjet/verify-report/1";
    j["seed"] = rep.seed;
    j["passed"] = rep.all_passed;
    for (const auto& c : rep.criteria) {
        json jc;
        jc["id"] = c.id;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["margin"] = c.margin;
        jc["runtime_ms"] = c.ms;
        for (const auto& s : c.checks)
            jc["checks"].push_back(
                {{"label", s.label}, {"residual", s.residual}, {"tolerance", s.tolerance}, {"passed", s.passed()}});
        j["criteria"].push_back(jc);
    }
    for (const auto& c : rep.criteria)
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name
                  << "  margin=" << fmt(c.margin) << "  (" << fmt(c.ms) << " ms)\n";
    if (!out.empty()) write_text(out, j.dump(2) + "\n");
    return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heatjet: heat-kernel distribution curves, exact-support test functions, "
                 "half-line smoothness, and Weil-algebra jets"};
    app.require_subcommand(1);
    app.fallthrough();

    heatjet::QuadratureConfig quad;
    app.add_option("--gh-nodes", quad.hermite_nodes, "Gauss-Hermite node count")->capture_default_str();
    app.add_option("--gl-tol", quad.abs_tol, "adaptive quadrature absolute tolerance")->capture_default_str();

    std::string out;
    app.add_option("--out", out, "output file (default: stdout)");

    // weil-demo
    auto* wd = app.add_subcommand("weil-demo", "build a Weil algebra and print its data");
    int wd_l = 1, wd_r = 2;
    std::vector<std::string> wd_gens;
    wd->add_option("--l", wd_l, "variable count")->capture_default_str();
    wd->add_option("--r", wd_r, "truncation order")->capture_default_str();
    wd->add_option("--gen", wd_gens, "ideal generator, e.g. \"s1^2-s2\" (repeatable)");

    // smoothness-report
    auto* sr = app.add_subcommand("smoothness-report", "half-line smoothness diagnostics");
    std::string sr_f = "cossqrt", sr_csv;
    int sr_order = 4;
    double sr_tol = 1e-5;
    sr->add_option("--f", sr_f, "function: sqrt|cossqrt|t|t2|expinv|exp")->capture_default_str();
    sr->add_option("--order", sr_order, "derivative order examined")->capture_default_str();
    sr->add_option("--tol", sr_tol, "square-smooth defect tolerance")->capture_default_str();
    sr->add_option("--csv", sr_csv, "write the extrapolation ladder as CSV to this file");

    // lubs-demo
    auto* ld = app.add_subcommand("lubs-demo", "uniform-support cover or discontinuity table");
    std::string ld_family = "moving";
    ld->add_option("--family", ld_family, "family: fixed|scaledsupport|moving|scaled")->capture_default_str();

    // heat-table
    auto* ht = app.add_subcommand("heat-table", "table of Phi(t) = <K(t), phi>");
    std::string ht_phi = "bump";
    double ht_tmin = 0.0, ht_tmax = 2.0;
    int ht_steps = 40;
    ht->add_option("--phi", ht_phi, "test input: bump|bump[a,b]|gauss|poly[c..]*bump[a,b]")->capture_default_str();
    ht->add_option("--tmin", ht_tmin)->capture_default_str();
    ht->add_option("--tmax", ht_tmax)->capture_default_str();
    ht->add_option("--steps", ht_steps)->capture_default_str();

    // limit-table
    auto* lt = app.add_subcommand("limit-table", "ladder (Phi(t) - phi(0))/t along t = 2^-j");
    std::string lt_phi = "bump";
    int lt_jmin = 4, lt_jmax = 14;
    lt->add_option("--phi", lt_phi)->capture_default_str();
    lt->add_option("--jmin", lt_jmin)->capture_default_str();
    lt->add_option("--jmax", lt_jmax)->capture_default_str();

    // evolve
    auto* ev = app.add_subcommand("evolve", "heat evolution snapshot as CSV (t, x, density)");
    std::string ev_initial = "dirac", ev_grid = "-4:4:0.05";
    double ev_t = 0.5;
    ev->add_option("--initial", ev_initial, "dirac|dirac1|bump|bump[a,b]|poly[..]*bump[..]")->capture_default_str();
    ev->add_option("--t", ev_t, "evolution time")->capture_default_str();
    ev->add_option("--grid", ev_grid, "snapshot grid lo:hi:step")->capture_default_str();

    // verify
    auto* vf = app.add_subcommand("verify", "run the acceptance suite");
    heatjet::verify::Options vopt;
    double vf_tol = 0.0;
    vf->add_option("--seed", vopt.seed, "seed for the randomized checks")->capture_default_str();
    vf->add_option("--tol", vf_tol, "override every tolerance (demonstration mode)");
    vf->add_option("--only", vopt.only, "run only criteria whose name contains this (or an id)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (wd->parsed()) return cmd_weil_demo(wd_l, wd_r, wd_gens, out);
        if (sr->parsed()) return cmd_smoothness(sr_f, sr_order, sr_tol, out, sr_csv);
        if (ld->parsed()) return cmd_lubs(ld_family, out);
        if (ht->parsed()) return cmd_heat_table(ht_phi, ht_tmin, ht_tmax, ht_steps, quad, out);
        if (lt->parsed()) return cmd_limit_table(lt_phi, lt_jmin, lt_jmax, quad, out);
        if (ev->parsed()) return cmd_evolve(ev_initial, ev_t, ev_grid, quad, out);
        if (vf->parsed()) {
            vopt.quad = quad;
            vopt.tol_override = vf_tol;
            return cmd_verify(vopt, out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
