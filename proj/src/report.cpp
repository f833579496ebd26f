#include "swlab/experiment.hpp"

#include "swlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace swlab {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void put_fit(std::ostringstream& os, const char* key, const SlopeFit& f) {
    os << key << ".slope = " << num(f.points >= 2 ? f.slope : NAN) << "\n";
    os << key << ".residual = " << num(f.points >= 2 ? f.residual : NAN) << "\n";
    os << key << ".points = " << f.points << "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("emit: cannot write " + path.string());
    out << text;
    if (!out) throw IoError("emit: write failed for " + path.string());
}

}  // namespace

std::string csv_text(const InflationReport& report) {
    std::ostringstream os;
    os << "n,T0,norm_u0,witness,G_n,norm_uT,norm_U1,X_T,Y_T,mode\n";
    for (const auto& r : report.rows) {
        os << r.n << ',' << num(r.T0) << ',' << num(r.norm_u0) << ',' << num(r.witness) << ',' << num(r.G) << ','
           << num(r.norm_uT) << ',' << num(r.norm_U1) << ',' << num(r.X_T) << ',' << num(r.Y_T) << ',' << r.mode
           << '\n';
    }
    return os.str();
}

std::string summary_text(const InflationReport& report, const Verdict& verdict) {
    const auto& f = report.family;
    std::ostringstream os;
    os << "version = " << kVersion << "\n";
    os << "config_hash = " << report.config.hash() << "\n";
    os << "p = " << num(f.p) << "\n";
    os << "p_star = " << num(f.p_star) << "\n";
    os << "q = " << num(f.q) << "\n";
    os << "q_star = " << num(f.q_star) << "\n";
    os << "r = " << num(f.r) << "\n";
    os << "eps = " << num(f.eps) << "\n";
    os << "inflation_exp = " << num(f.inflation_exp()) << "\n";
    os << "remainder_exp = " << num(f.remainder_exp()) << "\n";
    put_fit(os, "data_slope", report.data_slope);
    put_fit(os, "witness_slope", report.witness_slope);
    put_fit(os, "u1_slope", report.u1_slope);
    put_fit(os, "solution_slope", report.solution_slope);
    put_fit(os, "remainder_slope", report.remainder_slope);
    put_fit(os, "self_to_cross_slope", report.self_slope);
    os << "G_spread = " << num(report.G_spread) << "\n";
    for (const auto& r : report.rows) {
        os << "row." << r.n << ".status = " << r.status << "\n";
        os << "row." << r.n << ".grid_N = " << r.grid_N << "\n";
        os << "row." << r.n << ".self_to_cross = " << num(r.self_to_cross) << "\n";
        os << "row." << r.n << ".max_abs_h = " << num(r.max_abs_h) << "\n";
        if (!r.message.empty()) os << "row." << r.n << ".message = " << r.message << "\n";
    }
    for (std::size_t k = 0; k < verdict.checks.size(); ++k) {
        const auto& c = verdict.checks[k];
        os << "check." << k + 1 << " = " << (c.evaluated ? (c.pass ? "pass" : "fail") : "n/a") << " | " << c.name
           << " | " << c.detail << "\n";
    }
    os << "verdict = " << (verdict.pass() ? "pass" : "fail") << "\n";
    std::istringstream cfg(report.config.canonical_text());
    for (std::string line; std::getline(cfg, line);) os << "config." << line << "\n";
    return os.str();
}

std::string plot_svg(const InflationReport& report) {
    struct Series {
        const char* name;
        const char* colour;
        std::vector<std::pair<double, double>> pts;
        SlopeFit fit;
    };
    std::vector<Series> series{{"norm_u0", "#1f77b4", {}, report.data_slope},
                               {"witness", "#d62728", {}, report.witness_slope},
                               {"norm_U1", "#2ca02c", {}, report.u1_slope},
                               {"norm_uT", "#9467bd", {}, report.solution_slope},
                               {"X_T", "#ff7f0e", {}, report.remainder_slope}};
    for (const auto& r : report.rows) {
        const double vals[] = {r.norm_u0, r.witness, r.norm_U1, r.norm_uT, r.X_T};
        for (std::size_t k = 0; k < series.size(); ++k) {
            if (std::isfinite(vals[k]) && vals[k] > 0.0) series[k].pts.emplace_back(r.n, std::log2(vals[k]));
        }
    }
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x0 > x1) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 - x0 < 1) x1 = x0 + 1;
    if (y1 - y0 < 1) y1 = y0 + 1;
    const double W = 640, H = 420, ml = 60, mr = 140, mt = 20, mb = 40;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return mt + (y1 - y) / (y1 - y0) * (H - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    for (int n = static_cast<int>(std::ceil(x0)); n <= static_cast<int>(std::floor(x1)); ++n) {
        os << "<text x=\"" << px(n) << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << n
           << "</text>\n";
    }
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py(y1) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
       << short_num(y1) << "</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py(y0) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
       << short_num(y0) << "</text>\n";
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 6 << "\" font-size=\"12\" text-anchor=\"middle\">n</text>\n";
    os << "<text x=\"14\" y=\"" << (mt + H - mb) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 "
       << (mt + H - mb) / 2 << ")\" text-anchor=\"middle\">log2 value</text>\n";
    double legend_y = mt + 10;
    for (const auto& s : series) {
        if (s.pts.empty()) continue;
        for (const auto& [x, y] : s.pts) {
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << s.colour << "\"/>\n";
        }
        if (s.fit.points >= 2) {
            os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(s.fit.slope * x0 + s.fit.intercept) << "\" x2=\"" << px(x1)
               << "\" y2=\"" << py(s.fit.slope * x1 + s.fit.intercept) << "\" stroke=\"" << s.colour
               << "\" stroke-dasharray=\"4 3\"/>\n";
        }
        os << "<text x=\"" << W - mr + 10 << "\" y=\"" << legend_y << "\" font-size=\"11\" fill=\"" << s.colour << "\">"
           << s.name << " (" << short_num(s.fit.points >= 2 ? s.fit.slope : NAN) << ")</text>\n";
        legend_y += 16;
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path> emit(const InflationReport& report, const Verdict& verdict,
                                        const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("emit: cannot create " + dir.string() + ": " + ec.message());
    const std::vector<std::filesystem::path> paths{dir / "sweep.csv", dir / "summary.txt", dir / "plot.svg"};
    write_file(paths[0], csv_text(report));
    write_file(paths[1], summary_text(report, verdict));
    write_file(paths[2], plot_svg(report));
    return paths;
}

}  // namespace swlab
