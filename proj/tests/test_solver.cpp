#include "support.hpp"

#include "swlab/checkpoint.hpp"
#include "swlab/construction.hpp"
#include "swlab/errors.hpp"
#include "swlab/solver.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace swlab;
using swlab::testing::random_real_field;
using swlab::testing::rel_l2;

namespace {

VectorField2D taylor_green(const GridSpec& g, double a) {
    return {to_spectral(sample_physical(g, [a](double x, double y) { return a * std::sin(x) * std::cos(y); })),
            to_spectral(sample_physical(g, [a](double x, double y) { return -a * std::cos(x) * std::sin(y); }))};
}

double vec_rel(const VectorField2D& a, const VectorField2D& b) {
    const VectorField2D d = as_spectral(a) - as_spectral(b);
    const VectorField2D bs = as_spectral(b);
    return std::sqrt((spectral_energy(d[0]) + spectral_energy(d[1])) / (spectral_energy(bs[0]) + spectral_energy(bs[1])));
}

double vec_abs(const VectorField2D& a, const VectorField2D& b) {
    const VectorField2D d = as_spectral(a) - as_spectral(b);
    return std::sqrt(spectral_energy(d[0]) + spectral_energy(d[1]));
}

}  // namespace

TEST_CASE("config and forms") {
    CHECK(parse_h_form("primitive") == HForm::primitive);
    CHECK(parse_h_form(to_string(HForm::conservative)) == HForm::conservative);
    CHECK_THROWS_AS(parse_h_form("mass"), ConfigError);
    SolverConfig cfg(GridSpec(1.0, 32));
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.T = 1.0;
    cfg.save_every = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.save_every = 1;
    cfg.dt = 2.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    const GridSpec g(1.0, 48);
    CHECK(default_time_step(g, 1.0, 0.0) == doctest::Approx(0.2 / 256.0));
    CHECK(default_time_step(g, 1e-3, 0.0) == doctest::Approx(1e-3 / 64));
    CHECK(default_time_step(g, 1.0, 100.0) == doctest::Approx(0.5 * g.spacing() / 100.0));
}

TEST_CASE("right-hand side") {
    const GridSpec g(1.0, 48);
    SolverConfig cfg(g);
    cfg.T = 1.0;
    const Field2D zero(g, Representation::spectral);
    const VectorField2D zu = VectorField2D::zeros(g, Representation::spectral);
    const Rhs r0 = rhs_eval(zero, zu, cfg);
    CHECK(spectral_energy(r0.dh) == 0.0);
    CHECK(spectral_energy(r0.du[0]) + spectral_energy(r0.du[1]) == 0.0);

    std::mt19937_64 rng(3);
    const Field2D h = std::complex<double>(0.1) * random_real_field(g, rng, 1.0, 6.0);
    const VectorField2D u{random_real_field(g, rng, 1.0, 6.0), random_real_field(g, rng, 1.0, 6.0)};

    SUBCASE("linear part") {
        SolverConfig lin = cfg;
        lin.quadratic_terms = false;
        const Rhs r = rhs_eval(h, u, lin);
        CHECK(rel_l2(r.dh, std::complex<double>(-1.0) * divergence(u)) < 1e-14);
        CHECK(rel_l2(r.du[0], std::complex<double>(-1.0) * derivative(h, 1)) < 1e-14);
        CHECK(rel_l2(r.du[1], std::complex<double>(-1.0) * derivative(h, 2)) < 1e-14);
    }
    SUBCASE("quadratic part with h = 0 is -u.grad u") {
        SolverConfig quad = cfg;
        quad.linear_coupling = false;
        const Rhs r = rhs_eval(zero, u, quad);
        const VectorField2D ref = std::complex<double>(-1.0) * advective_derivative(u, u);
        CHECK(vec_rel(r.du, ref) < 1e-12);
        CHECK(spectral_energy(r.dh) < 1e-28 * spectral_energy(u[0]));
    }
    SUBCASE("conservative form has zero mean") {
        SolverConfig cons = cfg;
        cons.h_form = HForm::conservative;
        const Rhs r = rhs_eval(h, u, cons);
        CHECK(std::abs(r.dh.values()(0, 0)) <= 1e-12 * std::sqrt(spectral_energy(r.dh)));
        CHECK(imaginary_residue(r.dh) < 1e-12);
    }
    SUBCASE("domain") {
        const Field2D bad = to_spectral(sample_physical(g, [](double x, double) { return -1.5 * std::cos(x); }));
        CHECK_THROWS_AS(rhs_eval(bad, u, cfg), DomainViolation);
    }
}

TEST_CASE("heat exactness and zero data") {
    const GridSpec g(1.0, 64);
    std::mt19937_64 rng(8);
    const VectorField2D u0{random_real_field(g, rng, 1.0, 15.0), random_real_field(g, rng, 1.0, 15.0)};
    SolverConfig cfg(g);
    cfg.T = 0.05;
    cfg.quadratic_terms = false;
    cfg.linear_coupling = false;
    const SolveOutcome out = solve(Field2D(g, Representation::spectral), u0, cfg);
    REQUIRE(out.status == SolveStatus::completed);
    CHECK(out.final_time == cfg.T);
    CHECK(vec_rel(out.trajectory->u.back(), heat_propagate(u0, cfg.T)) < 1e-12);

    SolverConfig full(g);
    full.T = 0.05;
    const SolveOutcome z = solve(Field2D(g, Representation::spectral), VectorField2D::zeros(g, Representation::spectral), full);
    REQUIRE(z.status == SolveStatus::completed);
    CHECK(spectral_energy(z.trajectory->h.back()) == 0.0);
    CHECK(spectral_energy(z.trajectory->u.back()[0]) == 0.0);
    CHECK(z.max_abs_h == 0.0);
}

TEST_CASE("second-order self convergence") {
    const auto fam = index_family(8.0);
    const int n = 2;
    const InitialData init = make_initial_data(n, fam, solve_grid(n, 4.0));
    const double T = default_time(n, fam);
    auto run = [&](int steps) {
        SolverConfig cfg(init.grid());
        cfg.T = T;
        cfg.dt = T / steps;
        cfg.save_every = steps;
        const SolveOutcome out = solve(init, cfg);
        REQUIRE(out.status == SolveStatus::completed);
        return std::make_pair(out.trajectory->h.back(), out.trajectory->u.back());
    };
    const auto ref = run(64);
    const auto a = run(8);
    const auto b = run(16);
    const double ea = vec_abs(a.second, ref.second) + std::sqrt(spectral_energy(a.first - ref.first));
    const double eb = vec_abs(b.second, ref.second) + std::sqrt(spectral_energy(b.first - ref.first));
    const double order = std::log2(ea / eb);
    MESSAGE("order " << order);
    CHECK(order >= 1.9);
}

TEST_CASE("linear regime") {
    const GridSpec g(1.0, 32);
    SolverConfig cfg(g);
    cfg.T = 0.5;
    auto err = [&](double a) {
        const VectorField2D u0 = taylor_green(g, a);
        const SolveOutcome out = solve(Field2D(g, Representation::spectral), u0, cfg);
        REQUIRE(out.status == SolveStatus::completed);
        CHECK(imaginary_residue(out.trajectory->u.back()[0]) < 1e-10);
        CHECK(imaginary_residue(out.trajectory->h.back()) < 1e-10);
        return vec_abs(out.trajectory->u.back(), heat_propagate(u0, cfg.T));
    };
    const double e1 = err(1e-2);
    const double e2 = err(5e-3);
    CHECK(e1 > 0.0);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("conservative mass") {
    const GridSpec g(1.0, 48);
    std::mt19937_64 rng(12);
    const Field2D h0 = std::complex<double>(0.2) * random_real_field(g, rng, 1.0, 8.0);
    const VectorField2D u0{random_real_field(g, rng, 1.0, 8.0), random_real_field(g, rng, 1.0, 8.0)};
    SolverConfig cfg(g);
    cfg.T = 0.1;
    cfg.h_form = HForm::conservative;
    const SolveOutcome out = solve(h0, u0, cfg);
    REQUIRE(out.status == SolveStatus::completed);
    double drift = 0.0;
    for (const Field2D& h : out.trajectory->h.samples()) drift = std::max(drift, std::abs(h.values()(0, 0) - h0.values()(0, 0)));
    CHECK(drift <= 1e-10);
}

TEST_CASE("failures are reported") {
    const GridSpec g(1.0, 32);
    SolverConfig cfg(g);
    cfg.T = 1.0;
    const Field2D bad = to_spectral(sample_physical(g, [](double x, double) { return -1.5 * std::cos(x); }));
    const SolveOutcome dv = solve(bad, VectorField2D::zeros(g, Representation::spectral), cfg);
    CHECK(dv.status == SolveStatus::domain_violation);
    CHECK(dv.message.find("step 1") != std::string::npos);
    CHECK(dv.steps == 0);

    SolverConfig wild(g);
    wild.T = 50.0;
    wild.dt = 0.5;
    const SolveOutcome bu = solve(Field2D(g, Representation::spectral), taylor_green(g, 1e3), wild);
    CHECK(bu.status != SolveStatus::completed);
    CHECK(!bu.message.empty());
    CHECK(bu.final_time < wild.T);

    CHECK_THROWS_AS(solve(Field2D(GridSpec(1.0, 16), Representation::spectral), taylor_green(g, 1.0), cfg), ConfigError);
}

TEST_CASE("decomposition and checkpoints") {
    const auto fam = index_family(8.0);
    const int n = 2;
    const InitialData init = make_initial_data(n, fam, solve_grid(n, 4.0));
    SolverConfig cfg(init.grid());
    cfg.T = default_time(n, fam);
    cfg.dt = cfg.T / 40;
    const SolveOutcome out = solve(init, cfg);
    REQUIRE(out.status == SolveStatus::completed);
    const Trajectory& traj = *out.trajectory;
    CHECK(traj.u.size() == 41);

    const Decomposition d = decompose(traj, init);
    double worst = 0.0;
    for (std::size_t m = 0; m < traj.u.size(); ++m) {
        worst = std::max(worst, vec_rel(d.U0[m] + d.U1[m] + d.U2[m], traj.u[m]));
    }
    CHECK(worst < 1e-14);
    CHECK(vec_rel(d.U0.back(), heat_propagate(init.u0, cfg.T)) < 1e-14);
    CHECK(d.diagnostics.X_T == doctest::Approx(d.diagnostics.X_linf + d.diagnostics.X_l1));
    CHECK(d.diagnostics.Y_T > 0.0);

    DecompositionAccumulator acc(init.u0, fam.q, fam.p);
    solve(init, cfg, false, [&acc](const State& s) { acc.observe(s); });
    CHECK(acc.diagnostics().X_T == doctest::Approx(d.diagnostics.X_T).epsilon(1e-12));
    CHECK(acc.samples() == 41);

    SolverConfig coarse = cfg;
    coarse.save_every = 4;
    const SolveOutcome few = solve(init, coarse);
    CHECK_THROWS_AS(decompose(*few.trajectory, init), DomainError);

    const auto dir = std::filesystem::temp_directory_path() / "swlab-test-ckpt";
    std::filesystem::create_directories(dir);
    const auto path = dir / "traj.bin";
    write_trajectory(path, traj, HForm::conservative);
    const LoadedTrajectory back = read_trajectory(path);
    CHECK(back.h_form == HForm::conservative);
    CHECK(back.trajectory.dt == traj.dt);
    REQUIRE(back.trajectory.u.size() == traj.u.size());
    CHECK(back.trajectory.u.times() == traj.u.times());
    CHECK(back.trajectory.u.back().grid() == init.grid());
    CHECK((back.trajectory.u[7][1].values() == traj.u[7][1].values()).all());
    CHECK((back.trajectory.h[40].values() == traj.h[40].values()).all());
    const auto size = std::filesystem::file_size(path);
    const std::uintmax_t n2 = static_cast<std::uintmax_t>(init.grid().points()) * init.grid().points();
    CHECK(size == 8 + 4 + 4 + 8 + 8 + 4 + 4 + 8 + 41 * 8 + 41 * 3 * n2 * 16);

    write_trajectory(path, traj, HForm::primitive, Representation::physical);
    const LoadedTrajectory phys = read_trajectory(path);
    CHECK(!phys.trajectory.u[3][0].is_spectral());
    CHECK(vec_rel(phys.trajectory.u[3], traj.u[3]) < 1e-14);

    std::filesystem::resize_file(path, size / 2);
    CHECK_THROWS_AS(read_trajectory(path), IoError);
    {
        std::ofstream junk(path, std::ios::binary | std::ios::trunc);
        junk << "NOTATRAJECTORY";
    }
    CHECK_THROWS_AS(read_trajectory(path), IoError);
    CHECK_THROWS_AS(read_trajectory(dir / "missing.bin"), IoError);
    std::filesystem::remove_all(dir);
}
