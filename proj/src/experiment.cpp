#include "swlab/experiment.hpp"

#include "swlab/besov.hpp"
#include "swlab/construction.hpp"
#include "swlab/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

namespace swlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("config: '" + key + "' expects an integer");
    return static_cast<int>(v);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridSpec full_grid(int n, const ExperimentConfig& cfg) {
    return cfg.grid_N > 0 ? GridSpec(cfg.grid_L, cfg.grid_N) : solve_grid(n, cfg.grid_L);
}

bool wants_full(int n, const ExperimentConfig& cfg) { return cfg.mode != SweepMode::witness && n <= cfg.max_full_n; }

}  // namespace

const char* to_string(SweepMode mode) {
    switch (mode) {
    case SweepMode::witness: return "witness";
    case SweepMode::full: return "full";
    case SweepMode::both: return "both";
    }
    return "?";
}

SweepMode parse_mode(const std::string& text) {
    if (text == "witness" || text == "witness-only") return SweepMode::witness;
    if (text == "full" || text == "full-solve") return SweepMode::full;
    if (text == "both") return SweepMode::both;
    throw ConfigError("unknown mode '" + text + "' (expected witness, full or both)");
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    const std::string t = trim(text);
    for (const char* sep : {"..", ":"}) {
        const auto pos = t.find(sep);
        if (pos == std::string::npos) continue;
        const int a = to_int("n-range", trim(t.substr(0, pos)));
        const int b = to_int("n-range", trim(t.substr(pos + std::string(sep).size())));
        if (b < a) throw ConfigError("n-range: empty range " + t);
        for (int n = a; n <= b; ++n) out.push_back(n);
        return out;
    }
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_int("n", item));
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (!(p > 4.0)) throw ConfigError("config: p must exceed 4");
    if (n_list.empty()) throw ConfigError("config: n list is empty");
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        if (n_list[k] < 1) throw ConfigError("config: n must be >= 1");
        if (k > 0 && n_list[k] <= n_list[k - 1]) throw ConfigError("config: n list must be strictly ascending");
    }
    if (!(grid_L > 0.0)) throw ConfigError("config: grid-L must be positive");
    if (grid_N != 0 && (grid_N < 4 || grid_N % 2 != 0)) throw ConfigError("config: grid-N must be even and >= 4");
    if (dt < 0.0) throw ConfigError("config: dt must be nonnegative");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (!(witness_tol > 0.0 && witness_tol < 1e-2)) throw ConfigError("config: witness-tol must lie in (0, 1e-2)");
    if (out.empty()) throw ConfigError("config: out must not be empty");
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "p") {
        p = to_double(key, value);
    } else if (key == "n" || key == "n-range") {
        n_list = parse_n_list(value);
    } else if (key == "grid-L") {
        grid_L = to_double(key, value);
    } else if (key == "grid-N") {
        grid_N = to_int(key, value);
    } else if (key == "dt") {
        dt = to_double(key, value);
    } else if (key == "mode") {
        mode = parse_mode(value);
    } else if (key == "h-form") {
        h_form = parse_h_form(value);
    } else if (key == "out") {
        out = value;
    } else if (key == "workers") {
        workers = to_int(key, value);
    } else if (key == "max-full-n") {
        max_full_n = to_int(key, value);
    } else if (key == "witness-tol") {
        witness_tol = to_double(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os << "p = " << fmt(p) << "\n";
    os << "n = ";
    for (std::size_t k = 0; k < n_list.size(); ++k) os << (k ? "," : "") << n_list[k];
    os << "\n";
    os << "grid-L = " << fmt(grid_L) << "\n";
    os << "grid-N = " << grid_N << "\n";
    os << "dt = " << fmt(dt) << "\n";
    os << "mode = " << to_string(mode) << "\n";
    os << "h-form = " << to_string(h_form) << "\n";
    os << "max-full-n = " << max_full_n << "\n";
    os << "witness-tol = " << fmt(witness_tol) << "\n";
    return os.str();
}

std::string ExperimentConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void load_config(const std::filesystem::path& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot read " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: " + path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

SlopeFit fit_log2_slope(const std::vector<int>& n, const std::vector<double>& y) {
    if (n.size() != y.size()) throw DomainError("fit_log2_slope: size mismatch");
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (std::isfinite(y[k]) && y[k] > 0.0) {
            xs.push_back(n[k]);
            ys.push_back(std::log2(y[k]));
        }
    }
    SlopeFit fit;
    fit.points = static_cast<int>(xs.size());
    if (xs.size() < 2) return fit;
    Eigen::MatrixXd a(xs.size(), 2);
    Eigen::VectorXd b(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        a(static_cast<Eigen::Index>(k), 0) = xs[k];
        a(static_cast<Eigen::Index>(k), 1) = 1.0;
        b(static_cast<Eigen::Index>(k)) = ys[k];
    }
    const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(xs.size()));
    fit.valid = xs.size() >= 3;
    return fit;
}

std::string plan_sweep(const ExperimentConfig& cfg) {
    std::ostringstream os;
    for (int n : cfg.n_list) {
        const GridSpec dg = data_grid(n, cfg.grid_L);
        os << "n = " << n << ": data grid N = " << dg.points();
        if (wants_full(n, cfg)) {
            const GridSpec g = full_grid(n, cfg);
            const double mb = 16.0 * g.points() * g.points() / 1048576.0;
            os << ", solve grid N = " << g.points() << " (~" << static_cast<long>(mb * 40) << " MB peak)";
        } else if (cfg.mode != SweepMode::witness) {
            os << ", full solve skipped (n > max-full-n = " << cfg.max_full_n << ")";
        }
        os << "\n";
    }
    return os.str();
}

SweepRow run_witness(int n, const IndexFamily<double>& fam, const ExperimentConfig& cfg) {
    SweepRow row;
    row.n = n;
    row.T0 = default_time(n, fam);
    row.norm_uT = row.norm_U1 = row.X_T = row.Y_T = row.max_abs_h = kNaN;
    const InitialData init = make_initial_data(n, fam, data_grid(n, cfg.grid_L));
    row.grid_N = init.grid().points();
    row.norm_u0 = besov_norm(init.u0, BesovParams{2.0 / fam.p - 1.0, fam.p, 1.0});
    const U1Witness w = u1_witness(n, fam, row.T0, cfg.witness_tol);
    row.witness = w.cross_total;
    row.G = w.G;
    row.self_to_cross = w.self_to_cross();
    row.mode = "witness";
    row.status = "ok";
    return row;
}

SweepRow run_full(int n, const IndexFamily<double>& fam, const ExperimentConfig& cfg) {
    SweepRow row;
    row.n = n;
    row.T0 = default_time(n, fam);
    row.witness = row.G = row.self_to_cross = kNaN;
    const GridSpec grid = full_grid(n, cfg);
    if (grid.dealias_cutoff() <= std::ldexp(1.0, n + 1) + 1.0) {
        throw ConfigError("full solve at n = " + std::to_string(n) + " needs N >= " +
                          std::to_string(solve_grid(n, cfg.grid_L).points()) + " at L = " + fmt(cfg.grid_L));
    }
    const InitialData init = make_initial_data(n, fam, grid);
    row.grid_N = grid.points();
    row.norm_u0 = besov_norm(init.u0, BesovParams{2.0 / fam.p - 1.0, fam.p, 1.0});

    SolverConfig sc(grid);
    sc.T = row.T0;
    sc.dt = cfg.dt;
    sc.h_form = cfg.h_form;
    DecompositionAccumulator acc(init.u0, fam.q, fam.p);
    const SolveOutcome out = solve(init, sc, false, [&acc](const State& s) { acc.observe(s); });
    row.max_abs_h = out.max_abs_h;
    if (out.status != SolveStatus::completed) {
        throw NumericalError("solve at n = " + std::to_string(n) + ": " + to_string(out.status) + ": " + out.message);
    }
    row.norm_uT = acc.norm_u();
    row.norm_U1 = acc.norm_U1();
    const RemainderDiagnostics d = acc.diagnostics();
    row.X_T = d.X_T;
    row.Y_T = d.Y_T;
    row.mode = "grid";
    row.status = "ok";
    return row;
}

void refit(InflationReport& report) {
    std::vector<int> ns;
    std::vector<double> u0, wit, u1, uT, x, self, g;
    for (const auto& r : report.rows) {
        ns.push_back(r.n);
        u0.push_back(r.norm_u0);
        wit.push_back(r.witness);
        u1.push_back(r.norm_U1);
        uT.push_back(r.norm_uT);
        x.push_back(r.X_T);
        self.push_back(r.self_to_cross);
        if (std::isfinite(r.G) && r.G > 0.0) g.push_back(r.G);
    }
    report.data_slope = fit_log2_slope(ns, u0);
    report.witness_slope = fit_log2_slope(ns, wit);
    report.u1_slope = fit_log2_slope(ns, u1);
    report.solution_slope = fit_log2_slope(ns, uT);
    report.remainder_slope = fit_log2_slope(ns, x);
    report.self_slope = fit_log2_slope(ns, self);
    report.G_spread = g.empty() ? kNaN : *std::max_element(g.begin(), g.end()) / *std::min_element(g.begin(), g.end()) - 1.0;
}

InflationReport run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    InflationReport report;
    report.config = cfg;
    report.family = index_family(cfg.p);
    const auto& fam = report.family;

    auto job = [&cfg, &fam](int n) {
        SweepRow row;
        row.n = n;
        try {
            if (cfg.mode == SweepMode::full) {
                if (!wants_full(n, cfg)) {
                    row.T0 = default_time(n, fam);
                    row.norm_u0 = row.witness = row.G = row.self_to_cross = row.norm_uT = row.norm_U1 = row.X_T =
                        row.Y_T = row.max_abs_h = kNaN;
                    row.mode = "grid";
                    row.status = "skipped";
                    row.message = "n exceeds max-full-n";
                    return row;
                }
                return run_full(n, fam, cfg);
            }
            row = run_witness(n, fam, cfg);
            if (wants_full(n, cfg)) {
                const SweepRow g = run_full(n, fam, cfg);
                row.norm_uT = g.norm_uT;
                row.norm_U1 = g.norm_U1;
                row.X_T = g.X_T;
                row.Y_T = g.Y_T;
                row.max_abs_h = g.max_abs_h;
                row.grid_N = g.grid_N;
                row.mode = "witness+grid";
            }
        } catch (const std::exception& e) {
            row.T0 = default_time(n, fam);
            row.status = "failed";
            row.message = e.what();
            for (double* v : {&row.norm_u0, &row.witness, &row.G, &row.self_to_cross, &row.norm_uT, &row.norm_U1,
                              &row.X_T, &row.Y_T, &row.max_abs_h}) {
                if (*v == 0.0) *v = kNaN;
            }
            if (row.mode.empty()) row.mode = cfg.mode == SweepMode::full ? "grid" : "witness";
        }
        return row;
    };

    report.rows.resize(cfg.n_list.size());
    const std::size_t batch = static_cast<std::size_t>(cfg.workers);
    for (std::size_t start = 0; start < cfg.n_list.size(); start += batch) {
        std::vector<std::future<SweepRow>> running;
        for (std::size_t k = start; k < std::min(cfg.n_list.size(), start + batch); ++k) {
            running.push_back(std::async(std::launch::async, job, cfg.n_list[k]));
        }
        for (std::size_t k = 0; k < running.size(); ++k) report.rows[start + k] = running[k].get();
    }

    refit(report);
    return report;
}

InflationReport read_sweep_csv(const std::filesystem::path& path, const ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("read_sweep_csv: cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "n,T0,norm_u0,witness,G_n,norm_uT,norm_U1,X_T,Y_T,mode") {
        throw IoError("read_sweep_csv: unexpected header in " + path.string());
    }
    InflationReport report;
    report.config = cfg;
    report.family = index_family(cfg.p);
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(trim(cell));
        if (cells.size() != 10) throw IoError("read_sweep_csv: malformed row '" + line + "'");
        auto val = [&](std::size_t k) { return cells[k] == "nan" ? kNaN : to_double("csv", cells[k]); };
        SweepRow r;
        r.n = to_int("csv", cells[0]);
        r.T0 = val(1);
        r.norm_u0 = val(2);
        r.witness = val(3);
        r.G = val(4);
        r.norm_uT = val(5);
        r.norm_U1 = val(6);
        r.X_T = val(7);
        r.Y_T = val(8);
        r.mode = cells[9];
        r.status = "ok";
        r.self_to_cross = kNaN;
        report.rows.push_back(r);
    }
    refit(report);
    return report;
}

bool Verdict::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.evaluated || c.pass; });
}

Verdict verify_bounds(const InflationReport& report) {
    const double eps = report.family.eps;
    Verdict v;
    if (!report.data_slope.valid) throw DomainError("verify_bounds: data norm needs at least 3 points");
    BoundCheck data{"(i) data norm slope <= -eps + 0.15 eps", true, false, ""};
    data.pass = report.data_slope.slope <= -0.85 * eps;
    data.detail = "slope " + fmt(report.data_slope.slope) + " vs bound " + fmt(-0.85 * eps);
    v.checks.push_back(data);

    const bool grid = report.u1_slope.valid;
    const SlopeFit& s = grid ? report.u1_slope : report.witness_slope;
    if (!s.valid) throw DomainError("verify_bounds: U1 norm or witness needs at least 3 points");
    const double bound = report.family.inflation_exp() - 0.05;
    BoundCheck infl{std::string("(ii) U1 ") + (grid ? "norm" : "witness") + " slope >= 1 - 4/p - 6 eps - 0.05", true,
                    s.slope >= bound, "slope " + fmt(s.slope) + " vs bound " + fmt(bound)};
    v.checks.push_back(infl);

    BoundCheck ratio{"(iii) norm_uT / norm_u0 strictly increasing", false, false, "n/a (no full solves)"};
    std::vector<double> ratios;
    for (const auto& r : report.rows) {
        if (std::isfinite(r.norm_uT) && std::isfinite(r.norm_u0) && r.norm_u0 > 0.0) ratios.push_back(r.norm_uT / r.norm_u0);
    }
    if (ratios.size() >= 2) {
        ratio.evaluated = true;
        ratio.pass = true;
        std::ostringstream os;
        for (std::size_t k = 0; k < ratios.size(); ++k) {
            os << (k ? " " : "") << fmt(ratios[k]);
            if (k > 0 && !(ratios[k] > ratios[k - 1])) ratio.pass = false;
        }
        ratio.detail = "ratios " + os.str();
    }
    v.checks.push_back(ratio);
    return v;
}

}  // namespace swlab
