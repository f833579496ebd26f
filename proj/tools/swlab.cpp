#include "swlab/checkpoint.hpp"
#include "swlab/construction.hpp"
#include "swlab/errors.hpp"
#include "swlab/experiment.hpp"
#include "swlab/properties.hpp"
#include "swlab/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <utility>

using namespace swlab;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Flags shared by every subcommand; values are applied over the config file.
struct Flags {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config;
    CLI::Option* config_opt = nullptr;

    void attach(CLI::App* app) {
        const std::pair<const char*, const char*> keys[] = {
            {"p", "integrability index, > 4"},
            {"n", "n list: 4,5,6 or 4..7"},
            {"n-range", "same as --n"},
            {"grid-L", "torus scale L"},
            {"grid-N", "points per axis, 0 = automatic"},
            {"dt", "time step, 0 = automatic"},
            {"mode", "witness, full or both"},
            {"h-form", "primitive or conservative"},
            {"out", "output directory"},
            {"workers", "concurrent per-n jobs"},
        };
        for (const auto& [key, help] : keys) {
            options[key] = app->add_option(std::string("--") + key, values[key], help);
        }
        config_opt = app->add_option("--config", config, "key = value file; flags override it");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig cfg;
        if (config_opt && config_opt->count() > 0) load_config(config, cfg);
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) cfg.set(key, values.at(key));
        }
        cfg.validate();
        return cfg;
    }
};

void print_row(const char* key, double v) { std::printf("%-16s %.17g\n", key, v); }

int cmd_indices(const ExperimentConfig& cfg) {
    const auto f = index_family(cfg.p);
    print_row("p", f.p);
    print_row("p_star", f.p_star);
    print_row("q", f.q);
    print_row("q_star", f.q_star);
    print_row("r", f.r);
    print_row("eps", f.eps);
    print_row("inflation_exp", f.inflation_exp());
    print_row("data_decay_exp", f.data_decay_exp());
    print_row("remainder_exp", f.remainder_exp());
    for (int n : cfg.n_list) {
        std::printf("n=%d T0=%.17g u1_witness_exp=%.17g amplitude=%.17g\n", n, default_time(n, f), f.u1_witness_exp(n),
                    data_amplitude(n, f));
    }
    return 0;
}

int cmd_initdata(const ExperimentConfig& cfg) {
    const auto f = index_family(cfg.p);
    for (int n : cfg.n_list) {
        const GridSpec grid = cfg.grid_N > 0 ? GridSpec(cfg.grid_L, cfg.grid_N) : data_grid(n, cfg.grid_L);
        const InitialData init = make_initial_data(n, f, grid);
        const VectorField2D phys = as_physical(init.u0);
        std::printf("n=%d L=%g N=%d minimal_N=%d solve_N=%d amplitude=%.17g norm_u0=%.17g imag_residue=%.3g\n", n,
                    grid.period_scale(), grid.points(), data_grid(n, cfg.grid_L).points(),
                    solve_grid(n, cfg.grid_L).points(), init.amplitude,
                    besov_norm(init.u0, BesovParams{2.0 / f.p - 1.0, f.p, 1.0}),
                    std::max(imaginary_residue(phys[0]), imaginary_residue(phys[1])));
    }
    return 0;
}

int cmd_witness(const ExperimentConfig& cfg) {
    const auto f = index_family(cfg.p);
    std::printf("n,t,cross_total,G_n,cross21,cross12,self_to_cross,rel_error\n");
    for (int n : cfg.n_list) {
        const U1Witness w = u1_witness(n, f, default_time(n, f), cfg.witness_tol);
        std::printf("%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3g\n", n, w.t, w.cross_total, w.G, w.term[0].real(),
                    w.term[1].real(), w.self_to_cross(), w.error);
    }
    return 0;
}

int cmd_solve(const ExperimentConfig& cfg, int save_every, bool checkpoint) {
    const auto f = index_family(cfg.p);
    int status = 0;
    for (int n : cfg.n_list) {
        const GridSpec grid = cfg.grid_N > 0 ? GridSpec(cfg.grid_L, cfg.grid_N) : solve_grid(n, cfg.grid_L);
        const InitialData init = make_initial_data(n, f, grid);
        SolverConfig sc(grid);
        sc.T = default_time(n, f);
        sc.dt = cfg.dt;
        sc.h_form = cfg.h_form;
        sc.save_every = save_every;
        DecompositionAccumulator acc(init.u0, f.q, f.p);
        const SolveOutcome out = solve(init, sc, checkpoint, [&acc](const State& s) { acc.observe(s); });
        std::printf("n=%d N=%d h_form=%s dt=%.6g steps=%d status=%s max_abs_h=%.6g\n", n, grid.points(),
                    to_string(cfg.h_form), out.dt, out.steps, to_string(out.status), out.max_abs_h);
        if (out.status != SolveStatus::completed) {
            std::fprintf(stderr, "%s\n", out.message.c_str());
            status = kExitNumerical;
            continue;
        }
        const RemainderDiagnostics d = acc.diagnostics();
        std::printf("  norm_u0=%.17g norm_uT=%.17g norm_U1=%.17g X_T=%.17g Y_T=%.17g\n",
                    besov_norm(init.u0, BesovParams{2.0 / f.p - 1.0, f.p, 1.0}), acc.norm_u(), acc.norm_U1(), d.X_T,
                    d.Y_T);
        if (checkpoint) {
            std::filesystem::create_directories(cfg.out);
            const auto path = std::filesystem::path(cfg.out) / ("trajectory_n" + std::to_string(n) + ".bin");
            write_trajectory(path, *out.trajectory, cfg.h_form);
            std::printf("  checkpoint %s\n", path.string().c_str());
        }
    }
    return status;
}

void print_verdict(const Verdict& v) {
    for (const auto& c : v.checks) {
        std::printf("%-5s %s: %s\n", c.evaluated ? (c.pass ? "PASS" : "FAIL") : "n/a", c.name.c_str(), c.detail.c_str());
    }
}

int cmd_sweep(const ExperimentConfig& cfg) {
    std::fprintf(stderr, "%s", plan_sweep(cfg).c_str());
    const InflationReport report = run_sweep(cfg);
    for (const auto& r : report.rows) {
        if (r.status == "failed") std::fprintf(stderr, "n=%d failed: %s\n", r.n, r.message.c_str());
    }
    Verdict v;
    try {
        v = verify_bounds(report);
    } catch (const DomainError& e) {
        v.checks.push_back({"verify_bounds", true, false, e.what()});
    }
    for (const auto& p : emit(report, v, cfg.out)) std::printf("wrote %s\n", p.string().c_str());
    std::printf("%s", csv_text(report).c_str());
    std::printf("G_spread %.6g\n", report.G_spread);
    print_verdict(v);
    return v.pass() ? 0 : kExitCheckFailed;
}

int cmd_check(const ExperimentConfig& cfg, const std::string& csv) {
    const auto path = csv.empty() ? std::filesystem::path(cfg.out) / "sweep.csv" : std::filesystem::path(csv);
    const InflationReport report = read_sweep_csv(path, cfg);
    const Verdict v = verify_bounds(report);
    print_verdict(v);
    return v.pass() ? 0 : kExitCheckFailed;
}

int cmd_props() {
    bool ok = true;
    for (const auto& r : run_properties()) {
        std::printf("%-5s %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        ok = ok && r.pass;
    }
    return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Norm-inflation laboratory for the 2D viscous shallow water system"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::map<std::string, Flags> flags;
    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        flags[name].attach(s);
        return s;
    };
    sub("indices", "print the index family and derived exponents");
    sub("initdata", "build the initial data and report its grid and norm");
    sub("u1-witness", "continuum witness of the first iterate per n");
    CLI::App* solve_cmd = sub("solve", "full nonlinear solve to T0 with remainder diagnostics");
    int save_every = 8;
    bool checkpoint = false;
    solve_cmd->add_option("--save-every", save_every, "checkpoint sample stride");
    solve_cmd->add_flag("--checkpoint", checkpoint, "write trajectory_n<n>.bin into --out");
    sub("sweep", "run a sweep, write sweep.csv, summary.txt, plot.svg");
    CLI::App* check_cmd = sub("check", "verify the bounds on an existing sweep.csv");
    std::string csv;
    check_cmd->add_option("--csv", csv, "defaults to <out>/sweep.csv");
    app.add_subcommand("props", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        for (const auto& [name, f] : flags) {
            if (!app.got_subcommand(name)) continue;
            const ExperimentConfig cfg = f.resolve();
            if (name == "indices") return cmd_indices(cfg);
            if (name == "initdata") return cmd_initdata(cfg);
            if (name == "u1-witness") return cmd_witness(cfg);
            if (name == "solve") return cmd_solve(cfg, save_every, checkpoint);
            if (name == "sweep") return cmd_sweep(cfg);
            if (name == "check") return cmd_check(cfg, csv);
        }
        if (app.got_subcommand("props")) return cmd_props();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
    return 0;
}
