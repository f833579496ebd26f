#include "swlab/errors.hpp"
#include "swlab/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace swlab;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("swlab-cli-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

/// Report with rows following exact powers of two in n.
InflationReport synthetic(double data_exp, double u1_exp, double ratio_exp, bool full) {
    InflationReport r;
    r.config.n_list = {4, 5, 6, 7};
    r.family = index_family(8.0);
    for (int n : r.config.n_list) {
        SweepRow row;
        row.n = n;
        row.T0 = std::exp2(r.family.T0_exp(n));
        row.norm_u0 = 0.3 * std::exp2(data_exp * n);
        row.witness = 1e-3 * std::exp2(u1_exp * n);
        row.G = 2e-3;
        row.self_to_cross = std::exp2(-n);
        row.norm_uT = full ? row.norm_u0 * std::exp2(ratio_exp * n) : kNaN;
        row.norm_U1 = full ? 0.01 * std::exp2(u1_exp * n) : kNaN;
        row.X_T = full ? 0.005 : kNaN;
        row.Y_T = full ? 0.5 : kNaN;
        row.mode = full ? "witness+grid" : "witness";
        row.status = "ok";
        r.rows.push_back(row);
    }
    refit(r);
    return r;
}

}  // namespace

TEST_CASE("n lists") {
    CHECK(parse_n_list("4..7") == std::vector<int>{4, 5, 6, 7});
    CHECK(parse_n_list("4:6") == std::vector<int>{4, 5, 6});
    CHECK(parse_n_list(" 4, 6 ,9") == std::vector<int>{4, 6, 9});
    CHECK(parse_n_list("").empty());
    CHECK_THROWS_AS(parse_n_list("7..4"), ConfigError);
    CHECK_THROWS_AS(parse_n_list("4,x"), ConfigError);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.set("n", "");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(cfg.set("n-range", "5..4"), ConfigError);
    cfg.set("n", "5,4");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ExperimentConfig{};
    cfg.set("p", "4");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ExperimentConfig{};
    cfg.set("grid-N", "101");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(cfg.set("colour", "blue"), ConfigError);
    CHECK_THROWS_AS(cfg.set("p", "eight"), ConfigError);
    CHECK_THROWS_AS(cfg.set("mode", "sometimes"), ConfigError);
    CHECK_THROWS_AS(cfg.set("h-form", "other"), ConfigError);
}

TEST_CASE("config files and provenance") {
    const auto dir = scratch("config");
    const auto path = dir / "run.cfg";
    {
        std::ofstream f(path);
        f << "# sweep\np = 10\n\nn-range = 4..6   # three points\nmode = both\nh-form = conservative\nworkers = 3\n";
    }
    ExperimentConfig cfg;
    load_config(path, cfg);
    CHECK(cfg.p == 10.0);
    CHECK(cfg.n_list == std::vector<int>{4, 5, 6});
    CHECK(cfg.mode == SweepMode::both);
    CHECK(cfg.h_form == HForm::conservative);
    CHECK(cfg.workers == 3);

    {
        std::ofstream f(path);
        f << "p 10\n";
    }
    CHECK_THROWS_AS(load_config(path, cfg), ConfigError);
    CHECK_THROWS_AS(load_config(dir / "absent.cfg", cfg), IoError);

    ExperimentConfig a, b;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.workers = 4;
    b.out = "elsewhere";
    CHECK(a.hash() == b.hash());
    b.p = 9.0;
    CHECK(a.hash() != b.hash());
    CHECK(a.canonical_text().find("p = 8") != std::string::npos);

    // The canonical text parses back to the same configuration.
    {
        std::ofstream f(path);
        f << b.canonical_text();
    }
    ExperimentConfig c;
    load_config(path, c);
    CHECK(c.hash() == b.hash());
    std::filesystem::remove_all(dir);
}

TEST_CASE("slope fits") {
    const SlopeFit exact = fit_log2_slope({4, 5, 6, 7}, {8.0, 4.0, 2.0, 1.0});
    CHECK(exact.valid);
    CHECK(exact.slope == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(exact.residual < 1e-14);
    CHECK(exact.points == 4);
    CHECK(!fit_log2_slope({4, 5}, {1.0, 2.0}).valid);
    const SlopeFit gaps = fit_log2_slope({4, 5, 6, 7}, {1.0, kNaN, 4.0, 8.0});
    CHECK(gaps.valid);
    CHECK(gaps.points == 3);
    CHECK(gaps.slope == doctest::Approx(1.0));
    CHECK(!fit_log2_slope({4, 5, 6}, {1.0, 0.0, -2.0}).valid);
}

TEST_CASE("verify bounds") {
    const auto fam = index_family(8.0);
    const double infl = fam.inflation_exp();

    const Verdict good = verify_bounds(synthetic(-fam.eps, infl, 0.3, true));
    CHECK(good.pass());
    REQUIRE(good.checks.size() == 3);
    CHECK(good.checks[2].evaluated);

    const Verdict flat = verify_bounds(synthetic(-fam.eps, -0.2, 0.3, true));
    CHECK(!flat.pass());
    CHECK(flat.checks[0].pass);
    CHECK(!flat.checks[1].pass);

    const Verdict growing = verify_bounds(synthetic(0.1, infl, 0.3, true));
    CHECK(!growing.checks[0].pass);
    CHECK(!growing.pass());

    const Verdict shrinking = verify_bounds(synthetic(-fam.eps, infl, -0.1, true));
    CHECK(!shrinking.checks[2].pass);

    const Verdict witness_only = verify_bounds(synthetic(-fam.eps, infl, 0.3, false));
    CHECK(!witness_only.checks[2].evaluated);
    CHECK(witness_only.checks[1].name.find("witness") != std::string::npos);
    CHECK(witness_only.pass());

    InflationReport two = synthetic(-fam.eps, infl, 0.3, true);
    two.rows.resize(2);
    refit(two);
    CHECK_THROWS_AS(verify_bounds(two), DomainError);

    // Pure function of the report.
    const InflationReport r = synthetic(-fam.eps, infl, 0.3, true);
    CHECK(summary_text(r, verify_bounds(r)) == summary_text(r, verify_bounds(r)));
}

TEST_CASE("emit") {
    InflationReport r = synthetic(-0.08, 0.1, 0.3, true);
    r.rows[3].norm_uT = kNaN;
    r.rows[3].norm_U1 = kNaN;
    r.rows[3].X_T = kNaN;
    r.rows[3].Y_T = kNaN;
    r.rows[3].mode = "witness";
    refit(r);
    CHECK(r.G_spread == doctest::Approx(0.0));
    const Verdict v = verify_bounds(r);

    const std::string csv = csv_text(r);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,T0,norm_u0,witness,G_n,norm_uT,norm_U1,X_T,Y_T,mode");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(rows == 4);
    CHECK(csv == csv_text(r));

    const auto dir = scratch("emit");
    const auto written = emit(r, v, dir);
    CHECK(written.size() == 3);
    for (const auto& p : written) CHECK(std::filesystem::file_size(p) > 0);
    std::ifstream in(dir / "sweep.csv");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == csv);
    const auto again = emit(r, v, dir / "second");
    std::ifstream in2(dir / "second" / "sweep.csv");
    std::stringstream buf2;
    buf2 << in2.rdbuf();
    CHECK(buf2.str() == buf.str());

    const InflationReport back = read_sweep_csv(dir / "sweep.csv", r.config);
    REQUIRE(back.rows.size() == r.rows.size());
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        CHECK(back.rows[k].n == r.rows[k].n);
        CHECK(back.rows[k].norm_u0 == r.rows[k].norm_u0);
        CHECK(back.rows[k].witness == r.rows[k].witness);
        CHECK(std::isnan(back.rows[k].norm_uT) == std::isnan(r.rows[k].norm_uT));
    }
    CHECK(back.data_slope.slope == r.data_slope.slope);
    CHECK(csv_text(back) == csv);

    std::ifstream summary(dir / "summary.txt");
    std::stringstream sb;
    sb << summary.rdbuf();
    CHECK(sb.str().find(r.config.hash()) != std::string::npos);
    CHECK(sb.str().find(kVersion) != std::string::npos);

    {
        std::ofstream blocker(dir / "file");
        blocker << "x";
    }
    CHECK_THROWS_AS(emit(r, v, dir / "file" / "sub"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep is independent of execution order") {
    ExperimentConfig cfg;
    cfg.n_list = {3, 4};
    cfg.witness_tol = 1e-6;
    const InflationReport serial = run_sweep(cfg);
    cfg.workers = 2;
    const InflationReport parallel = run_sweep(cfg);
    CHECK(csv_text(serial) == csv_text(parallel));
    CHECK(serial.rows[0].status == "ok");
    CHECK(plan_sweep(cfg).find("n = 4") != std::string::npos);
}
