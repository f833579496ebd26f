#pragma once

#include "swlab/index_family.hpp"
#include "swlab/solver.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace swlab {

constexpr const char* kVersion = "0.1.0";

enum class SweepMode { witness, full, both };
const char* to_string(SweepMode mode);
SweepMode parse_mode(const std::string& text);

struct ExperimentConfig {
    double p = 8.0;
    std::vector<int> n_list{4, 5, 6, 7};
    double grid_L = 4.0;
    int grid_N = 0;  ///< 0: minimal admissible N per n
    double dt = 0.0; ///< 0: solver default
    SweepMode mode = SweepMode::witness;
    HForm h_form = HForm::primitive;
    std::string out = "swlab-out";
    int workers = 1;
    int max_full_n = 6;
    double witness_tol = 1e-9;

    void validate() const;
    /// Sets one key; keys mirror the CLI long flags (p, n, n-range, grid-L, ...).
    void set(const std::string& key, const std::string& value);
    /// Canonical "key = value" text, one line per key, fixed order.
    std::string canonical_text() const;
    /// FNV-1a 64 of canonical_text(), hex.
    std::string hash() const;
};

/// Reads "key = value" lines ('#' starts a comment) into cfg.
void load_config(const std::filesystem::path& path, ExperimentConfig& cfg);
/// "4,5,6" or "4..7" / "4:7".
std::vector<int> parse_n_list(const std::string& text);

/// One n of a sweep; NaN marks quantities not computed in this mode.
struct SweepRow {
    int n = 0;
    double T0 = 0.0;
    double norm_u0 = 0.0;
    double witness = 0.0;
    double G = 0.0;
    double self_to_cross = 0.0;
    double norm_uT = 0.0;
    double norm_U1 = 0.0;
    double X_T = 0.0;
    double Y_T = 0.0;
    double max_abs_h = 0.0;
    int grid_N = 0;
    std::string mode;    ///< witness | grid | witness+grid
    std::string status;  ///< ok | skipped | failed
    std::string message;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< rms of log2 residuals
    int points = 0;
    bool valid = false;     ///< at least 3 finite points
};
/// Least squares of log2 y against n over finite positive y.
SlopeFit fit_log2_slope(const std::vector<int>& n, const std::vector<double>& y);

struct InflationReport {
    ExperimentConfig config;
    IndexFamily<double> family;
    std::vector<SweepRow> rows;
    SlopeFit data_slope;       ///< log2 norm_u0
    SlopeFit witness_slope;    ///< log2 witness
    SlopeFit u1_slope;         ///< log2 norm_U1
    SlopeFit solution_slope;   ///< log2 norm_uT
    SlopeFit remainder_slope;  ///< log2 X_T
    SlopeFit self_slope;       ///< log2 self_to_cross
    double G_spread = 0.0;     ///< max G / min G - 1
};

/// Projected grid per n for the configured mode.
std::string plan_sweep(const ExperimentConfig& cfg);

InflationReport run_sweep(const ExperimentConfig& cfg);
/// Recomputes the fitted slopes and the G spread from report.rows.
void refit(InflationReport& report);
/// Rebuilds a report (rows and fits) from a sweep.csv written by emit.
InflationReport read_sweep_csv(const std::filesystem::path& path, const ExperimentConfig& cfg);

/// Row-level quantities of one n (used by run_sweep; exposed for the CLI).
SweepRow run_witness(int n, const IndexFamily<double>& fam, const ExperimentConfig& cfg);
SweepRow run_full(int n, const IndexFamily<double>& fam, const ExperimentConfig& cfg);

struct BoundCheck {
    std::string name;
    bool evaluated = false;
    bool pass = false;
    std::string detail;
};
struct Verdict {
    std::vector<BoundCheck> checks;
    bool pass() const;
};

/// (i) data slope <= -0.85 eps, (ii) U1 slope (grid norm if available, else witness)
/// >= 1 - 4/p - 6 eps - 0.05, (iii) norm_uT / norm_u0 strictly increasing (full rows only).
/// Throws DomainError with fewer than 3 usable points for (i) or (ii).
Verdict verify_bounds(const InflationReport& report);

/// Writes sweep.csv, summary.txt and plot.svg into dir; returns the written paths.
std::vector<std::filesystem::path> emit(const InflationReport& report, const Verdict& verdict,
                                        const std::filesystem::path& dir);
/// CSV text: header n,T0,norm_u0,witness,G_n,norm_uT,norm_U1,X_T,Y_T,mode and one row per n.
std::string csv_text(const InflationReport& report);
std::string summary_text(const InflationReport& report, const Verdict& verdict);
std::string plot_svg(const InflationReport& report);

}  // namespace swlab
