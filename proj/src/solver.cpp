#include "swlab/solver.hpp"

#include "swlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace swlab {

namespace {

constexpr double kDiffusiveFactor = 0.2;
constexpr double kCfl = 0.5;
constexpr int kMinSteps = 64;

Field2D forward(const GridSpec& grid, ComplexArray physical, bool dealias_on) {
    Field2D f = to_spectral(Field2D(grid, Representation::physical, std::move(physical)));
    return dealias_on ? dealias(f) : f;
}

ComplexArray phys(const Field2D& f) { return as_physical(f).values(); }

bool finite(const Field2D& f) { return f.values().allFinite(); }

double max_speed(const VectorField2D& u) {
    const VectorField2D p = as_physical(u);
    return (p[0].values().abs2() + p[1].values().abs2()).sqrt().maxCoeff();
}

}  // namespace

const char* to_string(HForm form) { return form == HForm::primitive ? "primitive" : "conservative"; }

HForm parse_h_form(const std::string& text) {
    if (text == "primitive") return HForm::primitive;
    if (text == "conservative") return HForm::conservative;
    throw ConfigError("unknown h form '" + text + "' (expected primitive or conservative)");
}

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::completed: return "completed";
    case SolveStatus::blow_up: return "blow_up";
    case SolveStatus::domain_violation: return "domain_violation";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (!(T > 0.0)) throw ConfigError("SolverConfig: T must be positive");
    if (dt > T) throw ConfigError("SolverConfig: dt exceeds T");
    if (save_every < 1) throw ConfigError("SolverConfig: save_every must be >= 1");
}

double default_time_step(const GridSpec& grid, double T, double speed) {
    const double k = grid.dealias_cutoff();
    double dt = kDiffusiveFactor / (k * k);
    if (speed > 0.0) dt = std::min(dt, kCfl * grid.spacing() / speed);
    return std::min(dt, T / kMinSteps);
}

Rhs rhs_eval(const Field2D& h, const VectorField2D& u, const SolverConfig& cfg) {
    const GridSpec& grid = h.grid();
    const Field2D hs = as_spectral(h);
    const VectorField2D us = as_spectral(u);
    const Field2D div_u = divergence(us);
    const VectorField2D grad_h = gradient(hs);

    Field2D dh(grid, Representation::spectral);
    VectorField2D du = VectorField2D::zeros(grid, Representation::spectral);
    if (cfg.linear_coupling) {
        dh -= div_u;
        du[0] -= grad_h[0];
        du[1] -= grad_h[1];
    }
    if (!cfg.quadratic_terms) return {dh, du};

    const ComplexArray hp = phys(hs);
    const double floor = (1.0 + hp.real()).minCoeff();
    if (!(floor > 0.0)) {
        throw DomainViolation("rhs_eval: min(1 + h) = " + std::to_string(floor) + " <= 0, ln(1 + h) undefined");
    }
    const ComplexArray u1 = phys(us[0]);
    const ComplexArray u2 = phys(us[1]);
    const ComplexArray h1 = phys(grad_h[0]);
    const ComplexArray h2 = phys(grad_h[1]);

    if (cfg.h_form == HForm::primitive) {
        dh += forward(grid, -(u1 * h1 + u2 * h2) + hp * phys(div_u), cfg.dealias);
    } else {
        const Field2D f1 = forward(grid, hp * u1, cfg.dealias);
        const Field2D f2 = forward(grid, hp * u2, cfg.dealias);
        dh -= derivative(f1, 1) + derivative(f2, 2);
    }

    const Field2D log_h = forward(grid, (1.0 + hp).log(), cfg.dealias);
    const ComplexArray l1 = phys(derivative(log_h, 1));
    const ComplexArray l2 = phys(derivative(log_h, 2));
    for (int a = 0; a < 2; ++a) {
        const ComplexArray d1 = phys(derivative(us[a], 1));
        const ComplexArray d2 = phys(derivative(us[a], 2));
        du[a] += forward(grid, -(u1 * d1 + u2 * d2) + l1 * d1 + l2 * d2, cfg.dealias);
    }
    return {dh, du};
}

State step(const State& s, double dt, const SolverConfig& cfg) {
    const Rhs n0 = rhs_eval(s.h, s.u, cfg);
    State mid{s.t + dt, s.h + std::complex<double>(dt) * n0.dh,
              heat_propagate(s.u + std::complex<double>(dt) * n0.du, dt)};
    const Rhs n1 = rhs_eval(mid.h, mid.u, cfg);
    const std::complex<double> half(0.5 * dt);
    State out{s.t + dt, s.h + half * (n0.dh + n1.dh),
              heat_propagate(s.u + half * n0.du, dt) + half * n1.du};
    if (!finite(out.h) || !finite(out.u[0]) || !finite(out.u[1])) {
        throw NumericalError("step: non-finite values at t = " + std::to_string(out.t));
    }
    return out;
}

SolveOutcome solve(const Field2D& h0, const VectorField2D& u0, const SolverConfig& cfg, bool store_samples,
                   const StepObserver& observer) {
    cfg.validate();
    if (h0.grid() != cfg.grid || u0.grid() != cfg.grid) throw ConfigError("solve: data and config grids differ");
    double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(cfg.grid, cfg.T, max_speed(u0));
    const int steps = std::max(1, static_cast<int>(std::ceil(cfg.T / dt - 1e-9)));
    dt = cfg.T / steps;

    SolveOutcome out;
    out.dt = dt;
    Trajectory traj;
    traj.dt = dt;
    State s{0.0, as_spectral(h0), as_spectral(u0)};

    auto record = [&](const State& st) {
        const double mh = as_physical(st.h).values().abs().maxCoeff();
        out.max_abs_h = std::max(out.max_abs_h, mh);
        if (!store_samples) return;
        traj.h.append(st.t, st.h);
        traj.u.append(st.t, st.u);
        traj.max_abs_h.push_back(mh);
        traj.cfl.push_back(max_speed(st.u) * dt / cfg.grid.spacing());
    };
    record(s);
    if (observer) observer(s);
    try {
        for (int k = 1; k <= steps; ++k) {
            State next = step(s, dt, cfg);
            next.t = (k == steps) ? cfg.T : k * dt;
            s = std::move(next);
            out.steps = k;
            if (k % cfg.save_every == 0 || k == steps) record(s);
            if (observer) observer(s);
        }
    } catch (const DomainViolation& e) {
        out.status = SolveStatus::domain_violation;
        out.message = std::string(e.what()) + " (step " + std::to_string(out.steps + 1) + ")";
    } catch (const NumericalError& e) {
        out.status = SolveStatus::blow_up;
        out.message = std::string(e.what()) + " (step " + std::to_string(out.steps + 1) + ")";
    }
    out.final_time = s.t;
    if (store_samples) out.trajectory = std::move(traj);
    return out;
}

DecompositionAccumulator::DecompositionAccumulator(const VectorField2D& u0, double q, double p)
    : u0_(as_spectral(u0)), q_(q), p_(p), U0_(u0_), U1_(VectorField2D::zeros(u0.grid(), Representation::spectral)),
      F_(VectorField2D::zeros(u0.grid(), Representation::spectral)) {
    u2_table_.j_min = u0.grid().j_min();
    h_table_.j_min = u0.grid().j_min();
}

void DecompositionAccumulator::observe(const State& s) {
    if (count_ == 0) {
        if (s.t != 0.0) throw DomainError("DecompositionAccumulator: first state must be at t = 0");
        U0_ = u0_;
        F_ = advective_derivative(U0_, U0_);
    } else {
        const double dt = s.t - t_;
        if (!(dt > 0.0)) throw DomainError("DecompositionAccumulator: times must increase");
        if (count_ >= 2) {
            const double ref = t_ / (count_ - 1);
            if (std::abs(dt - ref) > 1e-9 * ref) throw DomainError("DecompositionAccumulator: non-uniform sample spacing");
        }
        U0_ = heat_propagate(u0_, s.t);
        const VectorField2D f_next = advective_derivative(U0_, U0_);
        const std::complex<double> half(0.5 * dt);
        U1_ = heat_propagate(U1_ - half * F_, dt) - half * f_next;
        F_ = f_next;
    }
    t_ = s.t;
    ++count_;
    u_ = as_spectral(s.u);
    u2_table_.append(s.t, block_lp_norms(U2(), q_));
    h_table_.append(s.t, block_lp_norms(s.h, q_));
}

VectorField2D DecompositionAccumulator::U2() const {
    if (!u_) throw DomainError("DecompositionAccumulator: no state observed");
    return *u_ - U0_ - U1_;
}

double DecompositionAccumulator::norm_u() const {
    if (!u_) throw DomainError("DecompositionAccumulator: no state observed");
    return besov_norm(*u_, BesovParams{2.0 / p_ - 1.0, p_, 1.0});
}

double DecompositionAccumulator::norm_U1() const { return besov_norm(U1_, BesovParams{2.0 / p_ - 1.0, p_, 1.0}); }

RemainderDiagnostics DecompositionAccumulator::diagnostics() const {
    if (count_ < 2) throw DomainError("DecompositionAccumulator: needs at least two samples");
    RemainderDiagnostics d;
    d.X_linf = chemin_lerner_norm(u2_table_, 2.0 / q_ - 1.0, 1.0, INFINITY);
    d.X_l1 = time_besov_norm(u2_table_, 2.0 / q_ + 1.0, 1.0, 1.0);
    d.X_T = d.X_linf + d.X_l1;
    d.Y_T = chemin_lerner_norm(h_table_, 2.0 / q_, 1.0, INFINITY);
    return d;
}

Decomposition decompose(const Trajectory& traj, const InitialData& init) {
    constexpr std::size_t kMinSamples = 32;
    if (traj.u.size() < kMinSamples) {
        throw DomainError("decompose: needs at least " + std::to_string(kMinSamples) + " samples, got " +
                          std::to_string(traj.u.size()));
    }
    DecompositionAccumulator acc(init.u0, init.family.q, init.family.p);
    Decomposition out;
    for (std::size_t m = 0; m < traj.u.size(); ++m) {
        acc.observe(State{traj.u.times()[m], traj.h[m], traj.u[m]});
        out.U0.append(acc.time(), acc.U0());
        out.U1.append(acc.time(), acc.U1());
        out.U2.append(acc.time(), acc.U2());
    }
    out.diagnostics = acc.diagnostics();
    return out;
}

}  // namespace swlab
