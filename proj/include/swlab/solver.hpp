#pragma once

#include "swlab/besov.hpp"
#include "swlab/construction.hpp"
#include "swlab/field.hpp"

#include <functional>
#include <optional>
#include <string>

namespace swlab {

/// h equation: primitive form dh = -div u - u.grad h + h div u, or conservative
/// dh = -div((1 + h) u).
/// 1 + h <= 0 somewhere: ln(1 + h) is undefined.
class DomainViolation : public NumericalError {
public:
    explicit DomainViolation(const std::string& what) : NumericalError(what) {}
};

enum class HForm { primitive, conservative };
const char* to_string(HForm form);
HForm parse_h_form(const std::string& text);

struct SolverConfig {
    GridSpec grid;
    double dt = 0.0;  ///< <= 0 selects default_time_step
    double T = 0.0;
    int save_every = 1;
    HForm h_form = HForm::primitive;
    bool dealias = true;
    /// Quadratic terms u.grad u, u.grad h, h div u, ln(1+h) coupling.
    bool quadratic_terms = true;
    /// Linear coupling -div u in dh and -grad h in du.
    bool linear_coupling = true;

    explicit SolverConfig(GridSpec g) : grid(std::move(g)) {}
    void validate() const;
};

/// min(0.2 / K^2, CFL, T / 64) with K the dealias cutoff and CFL = 0.5 dx / max|u|.
double default_time_step(const GridSpec& grid, double T, double max_speed);

struct State {
    double t = 0.0;
    Field2D h;       ///< spectral
    VectorField2D u; ///< spectral
};

struct Rhs {
    Field2D dh;
    VectorField2D du;
};

/// Non-diffusive right-hand side of (h, u); spectral and dealiased.
/// Throws NumericalError when min(1 + h) <= 0.
Rhs rhs_eval(const Field2D& h, const VectorField2D& u, const SolverConfig& cfg);

/// One integrating-factor RK2 step of size dt:
///   w* = E(w + dt N(w)),  w+ = E w + dt/2 (E N(w) + N(w*)),  E = e^{dt Delta} on u, identity on h.
/// Throws NumericalError on non-finite values.
State step(const State& s, double dt, const SolverConfig& cfg);

enum class SolveStatus { completed, blow_up, domain_violation };
const char* to_string(SolveStatus status);

/// Saved samples plus per-step diagnostics.
struct Trajectory {
    ScalarSeries h;
    VectorSeries u;
    std::vector<double> max_abs_h;  ///< per saved sample
    std::vector<double> cfl;        ///< per saved sample
    double dt = 0.0;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::completed;
    std::string message;
    int steps = 0;
    double dt = 0.0;
    double final_time = 0.0;
    double max_abs_h = 0.0;
    std::optional<Trajectory> trajectory;  ///< filled when store_samples
};

/// Called on every step with the new state (including t = 0).
using StepObserver = std::function<void(const State&)>;

SolveOutcome solve(const Field2D& h0, const VectorField2D& u0, const SolverConfig& cfg, bool store_samples = true,
                   const StepObserver& observer = {});
inline SolveOutcome solve(const InitialData& init, const SolverConfig& cfg, bool store_samples = true,
                          const StepObserver& observer = {}) {
    return solve(init.h0, init.u0, cfg, store_samples, observer);
}

/// X_T = ||U2||_{L~inf_T(B^{2/q-1}_{q,1})} + ||U2||_{L1_T(B^{2/q+1}_{q,1})}, Y_T = ||h||_{L~inf_T(B^{2/q}_{q,1})}.
struct RemainderDiagnostics {
    double X_T = 0.0;
    double Y_T = 0.0;
    double X_linf = 0.0;
    double X_l1 = 0.0;
};

/// Streams the decomposition u = U0 + U1 + U2 along a solve:
///   U0(t) = e^{t Delta} u0,
///   U1(t_{k+1}) = E U1(t_k) - dt/2 (E F_k + F_{k+1}),  F = U0 . grad U0 (dealiased),
///   U2 = u - U0 - U1,
/// and accumulates block-norm tables at integrability q.
class DecompositionAccumulator {
public:
    DecompositionAccumulator(const VectorField2D& u0, double q, double p);

    /// Feed states in time order, starting at t = 0; spacing must be uniform.
    void observe(const State& s);

    const VectorField2D& U0() const { return U0_; }
    const VectorField2D& U1() const { return U1_; }
    VectorField2D U2() const;
    double time() const { return t_; }
    int samples() const { return count_; }

    RemainderDiagnostics diagnostics() const;
    /// ||u(t)||_{B^{2/p-1}_{p,1}} and ||U1(t)||_{B^{2/p-1}_{p,1}} at the latest sample.
    double norm_u() const;
    double norm_U1() const;

    const BlockNormTable& u2_table() const { return u2_table_; }
    const BlockNormTable& h_table() const { return h_table_; }

private:
    VectorField2D u0_;
    double q_;
    double p_;
    double t_ = 0.0;
    int count_ = 0;
    VectorField2D U0_;
    VectorField2D U1_;
    VectorField2D F_;
    std::optional<VectorField2D> u_;
    BlockNormTable u2_table_;
    BlockNormTable h_table_;
};

struct Decomposition {
    VectorSeries U0;
    VectorSeries U1;
    VectorSeries U2;
    RemainderDiagnostics diagnostics;
};

/// Decomposition of a stored trajectory (needs >= 32 uniformly spaced samples).
Decomposition decompose(const Trajectory& traj, const InitialData& init);

}  // namespace swlab
