#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "moranlab/dominance.hpp"
#include "moranlab/drift.hpp"
#include "moranlab/imitation.hpp"
#include "moranlab/io.hpp"
#include "moranlab/moran.hpp"
#include "moranlab/ode.hpp"
#include "moranlab/pde.hpp"
#include "moranlab/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace moranlab;

namespace {

UpdateRule parse_rule(const std::string& name) {
    if (name == "db" || name == "death-birth") return UpdateRule::DeathBirth;
    if (name == "bd" || name == "birth-death") return UpdateRule::BirthDeath;
    throw std::invalid_argument("unknown update rule '" + name + "' (use db or bd)");
}

const char* rule_name(UpdateRule r) {
    return r == UpdateRule::DeathBirth ? "death-birth" : "birth-death";
}

json payoffs_json(const PayoffMatrix& P) {
    return json{{"A", P.A}, {"B", P.B}, {"C", P.C}, {"D", P.D}};
}

void write_summary(const std::string& resolved_out, json j) {
    std::ofstream f(resolved_out + ".summary.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + resolved_out + ".summary.json");
    f << j.dump(2) << "\n";
}

PayoffMatrix payoffs_from(const std::vector<double>& abcd, double r) {
    if (!abcd.empty() && r != 0.0)
        throw std::invalid_argument("give either --payoffs or -r, not both");
    if (r != 0.0) return frequency_independent_game(r);
    if (abcd.size() == 4) return PayoffMatrix{abcd[0], abcd[1], abcd[2], abcd[3]};
    if (abcd.empty()) return PayoffMatrix{};  // neutral
    throw std::invalid_argument("--payoffs needs exactly four values");
}

// Shared options for commands that run the continuum solver.
struct PdeCommon {
    double alpha = 0.0;
    double beta = 0.0;
    int grid = 200;
    double t_end = 1.0;
    double steady_sup = 0.0;
    std::string ic = "uniform";
    std::string out;
};

void add_pde_common(CLI::App* cmd, PdeCommon& o) {
    cmd->add_option("--alpha", o.alpha, "selection increment of the first type vs itself");
    cmd->add_option("--beta", o.beta, "selection increment of the first type vs the second");
    cmd->add_option("--grid", o.grid, "interval count of the frequency grid")
        ->check(CLI::Range(4, 1 << 20));
    cmd->add_option("--t-end", o.t_end, "time horizon in diffusion units");
    cmd->add_option("--steady-sup", o.steady_sup,
                    "stop early once the interior density falls below this sup-norm");
    cmd->add_option("--ic", o.ic,
                    "initial condition: uniform, 6x(1-x), 20x3(1-x), delta:<x0>, file:<path>");
    cmd->add_option("-o,--out", o.out, "output CSV path")->required();
}

void run_fixation(int N, const std::vector<double>& abcd, double r, const std::string& rule,
                  const std::string& method, const std::string& out) {
    MoranProcess p;
    p.N = N;
    p.payoffs = payoffs_from(abcd, r);
    p.rule = parse_rule(rule);
    const bool freq_indep = p.payoffs.A == p.payoffs.B && p.payoffs.C == p.payoffs.D;
    std::vector<double> fix;
    if (method == "closed") {
        fix = fixation_closed_form(p);
    } else if (method == "recursion") {
        fix = fixation_recursive(p);
    } else {
        throw std::invalid_argument("unknown method '" + method + "' (use recursion or closed)");
    }
    const std::string path = resolve_output_path(out);
    CsvWriter csv(path);
    csv.header({"n", "fixation"});
    for (int n = 0; n <= N; ++n) csv.row({static_cast<double>(n), fix[static_cast<std::size_t>(n)]});

    json checks;
    bool monotone = true;
    for (int n = 0; n < N; ++n)
        monotone = monotone &&
                   fix[static_cast<std::size_t>(n)] <= fix[static_cast<std::size_t>(n) + 1];
    checks["monotone"] = monotone;
    checks["starts_at_zero"] = fix.front() == 0.0;
    checks["ends_at_one"] = fix.back() == 1.0;
    if (freq_indep) {
        const auto other = method == "closed" ? fixation_recursive(p) : fixation_closed_form(p);
        double d = 0.0;
        for (std::size_t i = 0; i < fix.size(); ++i) d = std::max(d, std::abs(fix[i] - other[i]));
        checks["route_disagreement"] = d;
    }
    write_summary(path, json{{"command", "fixation"},
                             {"N", N},
                             {"payoffs", payoffs_json(p.payoffs)},
                             {"rule", rule_name(p.rule)},
                             {"method", method},
                             {"checks", checks}});
    std::cout << "wrote " << path << "\n";
}

void run_evolve(int N, const std::vector<double>& abcd, double r, const std::string& rule,
                std::int64_t steps, const std::string& init, const std::string& out, Exec policy) {
    MoranProcess p;
    p.N = N;
    p.payoffs = payoffs_from(abcd, r);
    p.rule = parse_rule(rule);
    std::vector<double> dist(static_cast<std::size_t>(N) + 1, 0.0);
    if (init == "uniform") {
        for (auto& v : dist) v = 1.0 / (N + 1);
    } else if (init.rfind("delta:", 0) == 0) {
        const int n0 = std::stoi(init.substr(6));
        if (n0 < 0 || n0 > N) throw std::invalid_argument("delta count outside 0..N");
        dist[static_cast<std::size_t>(n0)] = 1.0;
    } else {
        throw std::invalid_argument("unknown init '" + init + "' (use uniform or delta:<n>)");
    }
    const auto F = fixation_recursive(p);
    const double conserved0 = inner(dist, F);
    const auto final_dist = evolve(p, dist, steps, policy);
    double mass = 0.0;
    for (const double v : final_dist) mass += v;
    const std::string path = resolve_output_path(out);
    CsvWriter csv(path);
    csv.header({"n", "prob"});
    for (int n = 0; n <= N; ++n)
        csv.row({static_cast<double>(n), final_dist[static_cast<std::size_t>(n)]});
    write_summary(path, json{{"command", "evolve"},
                             {"N", N},
                             {"payoffs", payoffs_json(p.payoffs)},
                             {"rule", rule_name(p.rule)},
                             {"steps", steps},
                             {"init", init},
                             {"checks",
                              json{{"mass_defect", std::abs(1.0 - mass)},
                                   {"conserved_inner_drift",
                                    std::abs(inner(final_dist, F) - conserved0)}}}});
    std::cout << "wrote " << path << "\n";
}

void run_pde(const PdeCommon& o, Exec policy) {
    const auto params = PdeParams::selection(o.alpha, o.beta, o.grid);
    auto state = make_state(params, InitialCondition::parse(o.ic));
    EvolveOptions opt;
    opt.t_end = o.t_end;
    opt.steady_sup = o.steady_sup;
    opt.policy = policy;
    const auto stats = evolve_pde(params, state, opt);
    const std::string path = resolve_output_path(o.out);
    CsvWriter csv(path);
    csv.header({"x", "prob", "q"});
    for (int i = 0; i <= o.grid; ++i)
        csv.row({state.x(i), state.prob[static_cast<std::size_t>(i)], state.q(i)});
    write_summary(path, json{{"command", "pde"},
                             {"alpha", o.alpha},
                             {"beta", o.beta},
                             {"grid", o.grid},
                             {"ic", o.ic},
                             {"t_end", o.t_end},
                             {"mass_at_zero", state.a()},
                             {"mass_at_one", state.b()},
                             {"steps", stats.steps},
                             {"steady", stats.steady},
                             {"checks",
                              json{{"mass_defect", stats.mass_defect},
                                   {"conserved_inner_drift", stats.conserved_inner_drift},
                                   {"profile_inner_drift", stats.psi_inner_drift},
                                   {"min_prob", stats.min_prob}}}});
    std::cout << "wrote " << path << "\n";
}

void run_converge(const PdeCommon& o, const std::vector<int>& grids, double t_cap, Exec policy) {
    const auto ic = InitialCondition::parse(o.ic);
    const auto rows = convergence_harness(o.alpha, o.beta, ic, grids,
                                          o.steady_sup > 0 ? o.steady_sup : 1e-9, t_cap, policy);
    const std::string path = resolve_output_path(o.out);
    CsvWriter csv(path);
    csv.header({"grid", "absorbed_top", "target", "abs_error", "mass_defect", "steps", "steady"});
    for (const auto& row : rows)
        csv.row({static_cast<double>(row.grid), row.absorbed_top, row.target, row.abs_error,
                 row.mass_defect, static_cast<double>(row.steps), row.steady ? 1.0 : 0.0});
    bool shrinking = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        shrinking = shrinking && rows[i + 1].abs_error < rows[i].abs_error;
    write_summary(path, json{{"command", "converge"},
                             {"alpha", o.alpha},
                             {"beta", o.beta},
                             {"ic", o.ic},
                             {"grids", grids},
                             {"checks", json{{"errors_strictly_shrink", shrinking}}}});
    std::cout << "wrote " << path << "\n";
}

void run_dominance(double alpha, double beta, double q1, double q2, int x_grid,
                   const std::string& out) {
    const SelectionIncrements s{alpha, beta};
    const auto numeric = dominance_numeric(s, q1, q2, x_grid);
    json j{{"command", "dominance"}, {"alpha", alpha}, {"beta", beta}, {"q1", q1}, {"q2", q2}};
    const auto outcome_name = [](DominanceOutcome oc) {
        switch (oc) {
            case DominanceOutcome::FirstDominates: return "first";
            case DominanceOutcome::SecondDominates: return "second";
            default: return "neither";
        }
    };
    j["numeric"] = json{{"outcome", outcome_name(numeric.outcome)},
                        {"conclusive", numeric.conclusive},
                        {"margin_forward", numeric.margin_forward},
                        {"margin_reverse", numeric.margin_reverse}};
    const auto regional = classify(s, q1, q2);
    if (regional) {
        j["regions"] = json{{"outcome", outcome_name(regional->outcome)}};
    } else {
        j["regions"] = nullptr;
    }
    const auto qs = q_star(s);
    j["pivot"] = qs ? json(*qs) : json(nullptr);
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) {
        const std::string path = resolve_output_path(out);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path);
        f << j.dump(2) << "\n";
    }
}

void run_ode(double alpha, double beta, double x0, double t_end, int samples,
             const std::string& out) {
    const SelectionIncrements s{alpha, beta};
    std::vector<std::pair<double, double>> path_points;
    const auto r = integrate_replicator(s, x0, t_end, 1e-10, 1e-12,
                                        [&](double t, double x) { path_points.emplace_back(t, x); },
                                        samples);
    const std::string path = resolve_output_path(out);
    CsvWriter csv(path);
    csv.header({"t", "X"});
    for (const auto& [t, x] : path_points) csv.row({t, x});
    const auto cls = classify_equilibria(s);
    write_summary(path, json{{"command", "ode"},
                             {"alpha", alpha},
                             {"beta", beta},
                             {"x0", x0},
                             {"t_end", t_end},
                             {"X_end", r.X_end},
                             {"steps", r.steps},
                             {"refinements", r.refinements},
                             {"equilibria", json{{"degenerate", cls.degenerate},
                                                 {"stable", cls.stable},
                                                 {"unstable", cls.unstable}}}});
    std::cout << "wrote " << path << "\n";
}

void run_drift(const std::vector<double>& abcd, double r, const std::string& ic, int grid,
               const std::string& out) {
    const PayoffMatrix P = payoffs_from(abcd, r);
    validate_payoffs(P);
    const bool has_profile = P.A != P.C && P.B != P.D;
    const std::string path = resolve_output_path(out);
    CsvWriter csv(path);
    if (has_profile) {
        csv.header({"x", "velocity", "conserved"});
    } else {
        csv.header({"x", "velocity"});
    }
    for (int i = 1; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        if (has_profile) {
            csv.row({x, drift_velocity(P, x), psi_drift(P, x)});
        } else {
            csv.row({x, drift_velocity(P, x)});
        }
    }
    const auto masses = asymptotic_masses(P, InitialCondition::parse(ic));
    const auto class_name = [](GameClass g) {
        switch (g) {
            case GameClass::FirstDominates: return "first-dominates";
            case GameClass::SecondDominates: return "second-dominates";
            case GameClass::Coordination: return "coordination";
            case GameClass::HawkDove: return "interior-attractor";
            default: return "degenerate";
        }
    };
    write_summary(path, json{{"command", "drift"},
                             {"payoffs", payoffs_json(P)},
                             {"ic", ic},
                             {"class", class_name(masses.game)},
                             {"x_star", masses.x_star ? json(*masses.x_star) : json(nullptr)},
                             {"mass_at_zero", masses.at_zero},
                             {"mass_at_interior", masses.at_interior},
                             {"mass_at_one", masses.at_one},
                             {"indeterminate", masses.indeterminate}});
    std::cout << "wrote " << path << "\n";
}

void run_spectral(double alpha, double beta, int grid, int modes, const std::string& out,
                  const std::string& modes_out) {
    const EigenSystem sys =
        grid > 0 ? eigen_solve_at(alpha, beta, grid, modes) : eigen_solve(alpha, beta, modes);
    const std::string path = resolve_output_path(out);
    CsvWriter csv(path);
    csv.header({"j", "lambda"});
    for (std::size_t j = 0; j < sys.lambda.size(); ++j)
        csv.row({static_cast<double>(j), sys.lambda[j]});
    if (!modes_out.empty()) {
        const std::string mpath = resolve_output_path(modes_out);
        CsvWriter mcsv(mpath);
        std::vector<std::string> names{"x"};
        for (std::size_t j = 0; j < sys.modes.size(); ++j)
            names.push_back("mode" + std::to_string(j));
        mcsv.header(names);
        for (int i = 1; i < sys.grid; ++i) {
            std::vector<double> row{static_cast<double>(i) / sys.grid};
            for (const auto& m : sys.modes) row.push_back(m[static_cast<std::size_t>(i) - 1]);
            mcsv.row(row);
        }
    }
    json j{{"command", "spectral"}, {"alpha", alpha},          {"beta", beta},
           {"grid", sys.grid},      {"converged", sys.converged}, {"modes", modes},
           {"lambda0", sys.lambda.empty() ? json(nullptr) : json(sys.lambda[0])}};
    if (beta > 0.0 && alpha < beta) {
        j["gap_witness"] = zero_eigenvalue_witness(beta, beta - alpha);
    }
    write_summary(path, j);
    std::cout << "wrote " << path << "\n";
}

void run_imitate(double alpha, double beta, double p0, double s0, const PdeCommon& o,
                 Exec policy) {
    const SelectionIncrements s{alpha, beta};
    const auto kernel = fermi_kernel(p0, s0);
    const auto params = imitation_pde_params(s, kernel, o.grid);
    auto state = make_state(params, InitialCondition::parse(o.ic));
    EvolveOptions opt;
    opt.t_end = imitation_time_scale(kernel) * o.t_end;
    opt.steady_sup = o.steady_sup;
    opt.policy = policy;
    const auto stats = evolve_pde(params, state, opt);
    const std::string path = resolve_output_path(o.out);
    CsvWriter csv(path);
    csv.header({"x", "prob", "q"});
    for (int i = 0; i <= o.grid; ++i)
        csv.row({state.x(i), state.prob[static_cast<std::size_t>(i)], state.q(i)});
    const auto scales = continuum_coefficients(kernel);
    write_summary(path, json{{"command", "imitate"},
                             {"alpha", alpha},
                             {"beta", beta},
                             {"kernel", json{{"p0", p0}, {"s0", s0}}},
                             {"diffusion_scale", scales.diffusion},
                             {"drift_scale", scales.drift},
                             {"effective_alpha", params.alpha()},
                             {"effective_beta", params.beta()},
                             {"internal_t_end", opt.t_end},
                             {"mass_at_zero", state.a()},
                             {"mass_at_one", state.b()},
                             {"checks",
                              json{{"mass_defect", stats.mass_defect},
                                   {"conserved_inner_drift", stats.conserved_inner_drift}}}});
    std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moranlab: two-type Moran processes, their continuum limits, and spectra"};
    app.require_subcommand(1);
    bool serial = false;
    app.add_flag("--serial", serial, "disable threaded execution");
    const auto policy = [&] { return serial ? Exec::Serial : Exec::Auto; };

    // fixation
    auto* fx = app.add_subcommand("fixation", "exact fixation probabilities of a finite chain");
    int fx_N = 100;
    std::vector<double> fx_payoffs;
    double fx_r = 0.0;
    std::string fx_rule = "db", fx_method = "recursion", fx_out;
    fx->add_option("-N,--pop", fx_N, "population size")->check(CLI::Range(2, 100000000));
    fx->add_option("--payoffs", fx_payoffs, "payoff matrix entries A B C D")->expected(4);
    fx->add_option("-r", fx_r, "frequency-independent relative fitness (payoffs r r 1 1)");
    fx->add_option("--rule", fx_rule, "update rule: db or bd");
    fx->add_option("--method", fx_method, "recursion or closed (closed needs A==B, C==D)");
    fx->add_option("-o,--out", fx_out, "output CSV path")->required();
    fx->callback([&] { run_fixation(fx_N, fx_payoffs, fx_r, fx_rule, fx_method, fx_out); });

    // evolve
    auto* ev = app.add_subcommand("evolve", "push a count distribution through chain steps");
    int ev_N = 100;
    std::vector<double> ev_payoffs;
    double ev_r = 0.0;
    std::int64_t ev_steps = 1000;
    std::string ev_rule = "db", ev_init = "uniform", ev_out;
    ev->add_option("-N,--pop", ev_N, "population size")->check(CLI::Range(2, 1000000));
    ev->add_option("--payoffs", ev_payoffs, "payoff matrix entries A B C D")->expected(4);
    ev->add_option("-r", ev_r, "frequency-independent relative fitness");
    ev->add_option("--rule", ev_rule, "update rule: db or bd");
    ev->add_option("--steps", ev_steps, "number of chain steps")->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
    ev->add_option("--init", ev_init, "initial counts: uniform or delta:<n>");
    ev->add_option("-o,--out", ev_out, "output CSV path")->required();
    ev->callback([&] {
        run_evolve(ev_N, ev_payoffs, ev_r, ev_rule, ev_steps, ev_init, ev_out, policy());
    });

    // pde
    auto* pd = app.add_subcommand("pde", "evolve the continuum frequency distribution");
    PdeCommon pd_o;
    add_pde_common(pd, pd_o);
    pd->callback([&] { run_pde(pd_o, policy()); });

    // converge
    auto* cv = app.add_subcommand("converge",
                                  "absorbed-mass error of the chain against its continuum limit");
    PdeCommon cv_o;
    cv_o.ic = "delta:0.5";
    std::vector<int> cv_grids{50, 100, 200};
    double cv_tcap = 80.0;
    cv->add_option("--alpha", cv_o.alpha, "selection increment of the first type vs itself");
    cv->add_option("--beta", cv_o.beta, "selection increment of the first type vs the second");
    cv->add_option("--grids", cv_grids, "population sizes to sweep")->expected(1, 64);
    cv->add_option("--ic", cv_o.ic, "initial condition");
    cv->add_option("--steady-sup", cv_o.steady_sup, "steady-state threshold (default 1e-9)");
    cv->add_option("--t-cap", cv_tcap, "hard time cap per run");
    cv->add_option("-o,--out", cv_o.out, "output CSV path")->required();
    cv->callback([&] { run_converge(cv_o, cv_grids, cv_tcap, policy()); });

    // dominance
    auto* dm = app.add_subcommand("dominance", "compare two mixed strategies under selection");
    double dm_alpha = 0.0, dm_beta = 0.0, dm_q1 = 0.0, dm_q2 = 1.0;
    int dm_xgrid = 1000;
    std::string dm_out;
    dm->add_option("--alpha", dm_alpha, "selection increment of the first type vs itself");
    dm->add_option("--beta", dm_beta, "selection increment of the first type vs the second");
    dm->add_option("--q1", dm_q1, "first mixture weight")->check(CLI::Range(0.0, 1.0));
    dm->add_option("--q2", dm_q2, "second mixture weight")->check(CLI::Range(0.0, 1.0));
    dm->add_option("--x-grid", dm_xgrid, "quadrature resolution")->check(CLI::Range(100, 1000000));
    dm->add_option("-o,--out", dm_out, "optional JSON output path");
    dm->callback([&] { run_dominance(dm_alpha, dm_beta, dm_q1, dm_q2, dm_xgrid, dm_out); });

    // ode
    auto* od = app.add_subcommand("ode", "integrate the deterministic frequency flow");
    double od_alpha = 0.0, od_beta = 0.0, od_x0 = 0.5, od_tend = 10.0;
    int od_samples = 200;
    std::string od_out;
    od->add_option("--alpha", od_alpha, "selection increment of the first type vs itself");
    od->add_option("--beta", od_beta, "selection increment of the first type vs the second");
    od->add_option("--x0", od_x0, "initial frequency")->check(CLI::Range(0.0, 1.0));
    od->add_option("--t-end", od_tend, "time horizon");
    od->add_option("--samples", od_samples, "number of sampled path points")
        ->check(CLI::Range(1, 1000000));
    od->add_option("-o,--out", od_out, "output CSV path")->required();
    od->callback([&] { run_ode(od_alpha, od_beta, od_x0, od_tend, od_samples, od_out); });

    // drift
    auto* dr = app.add_subcommand("drift",
                                  "strong-selection transport: velocity, conserved profile, fate");
    std::vector<double> dr_payoffs;
    double dr_r = 0.0;
    int dr_grid = 256;
    std::string dr_ic = "uniform", dr_out;
    dr->add_option("--payoffs", dr_payoffs, "payoff matrix entries A B C D")->expected(4);
    dr->add_option("-r", dr_r, "frequency-independent relative fitness");
    dr->add_option("--grid", dr_grid, "sampling resolution")->check(CLI::Range(8, 1 << 20));
    dr->add_option("--ic", dr_ic, "initial condition");
    dr->add_option("-o,--out", dr_out, "output CSV path")->required();
    dr->callback([&] { run_drift(dr_payoffs, dr_r, dr_ic, dr_grid, dr_out); });

    // spectral
    auto* sp = app.add_subcommand("spectral", "decay spectrum of the interior dynamics");
    double sp_alpha = 0.0, sp_beta = 0.0;
    int sp_grid = 0, sp_modes = 16;
    std::string sp_out, sp_modes_out;
    sp->add_option("--alpha", sp_alpha, "selection increment of the first type vs itself");
    sp->add_option("--beta", sp_beta, "selection increment of the first type vs the second");
    sp->add_option("--grid", sp_grid, "fixed grid (0 = refine automatically)")
        ->check(CLI::Range(0, 1 << 20));
    sp->add_option("--modes", sp_modes, "number of modes")->check(CLI::Range(1, 4096));
    sp->add_option("-o,--out", sp_out, "output CSV path for the eigenvalues")->required();
    sp->add_option("--modes-out", sp_modes_out, "optional CSV path for the mode profiles");
    sp->callback([&] {
        run_spectral(sp_alpha, sp_beta, sp_grid, sp_modes, sp_out, sp_modes_out);
    });

    // imitate
    auto* im = app.add_subcommand("imitate",
                                  "imitation dynamics reduced to the standard continuum run");
    PdeCommon im_o;
    double im_p0 = 0.5, im_s0 = 0.25;
    add_pde_common(im, im_o);
    im->add_option("--p0", im_p0, "kernel value at zero payoff difference")
        ->check(CLI::Range(1e-12, 1.0));
    im->add_option("--s0", im_s0, "kernel slope at zero payoff difference");
    im->callback([&] { run_imitate(im_o.alpha, im_o.beta, im_p0, im_s0, im_o, policy()); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
