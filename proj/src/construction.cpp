#include "swlab/construction.hpp"

#include "swlab/besov.hpp"
#include "swlab/duhamel.hpp"
#include "swlab/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace swlab {

namespace {

constexpr double kBumpRadius = 0.5;
constexpr double kWitnessInner = 3.0 / 64.0;
constexpr double kWitnessOuter = 1.0 / 6.0;

double bump(double rho) { return BumpProfile::data_bump()(rho); }

// Normalized inner integrals at xi: (P1, P2, M1, M2) / (t s), with
//   P_b = int (eta_b + s) K(xi, eta + s e, t) phi_b(|xi - eta|) phi_b(|eta|) deta,
//   M_b = int (eta_b - s) K(xi, eta - s e, t) phi_b(|xi - eta|) phi_b(|eta|) deta.
CubatureResult<4> inner_integrals(const Eigen::Vector2d& xi, double s, double t, const CubatureOptions& opts) {
    const double xi2 = xi.squaredNorm();
    const Eigen::Vector2d shift(s, s);
    const double norm = 1.0 / (t * s);
    auto integrand = [&](double r, double theta) -> Eigen::Vector4d {
        const Eigen::Vector2d eta(r * std::cos(theta), r * std::sin(theta));
        const double w = bump((xi - eta).norm()) * bump(r);
        if (w == 0.0) return Eigen::Vector4d::Zero();
        const double kp = duhamel_kernel(xi2, kernel_exponent_gap(xi, eta + shift), t) * w * norm;
        const double km = duhamel_kernel(xi2, kernel_exponent_gap(xi, eta - shift), t) * w * norm;
        return {(eta(0) + s) * kp, (eta(1) + s) * kp, (eta(0) - s) * km, (eta(1) - s) * km};
    };
    return integrate_annulus<4>(integrand, 0.0, kBumpRadius, opts);
}

// Terms / (A^2 t s) from the normalized inner integrals.
std::array<std::complex<double>, 4> combine(const Eigen::Vector4d& pm) {
    const double p1 = pm(0), p2 = pm(1), m1 = pm(2), m2 = pm(3);
    const std::complex<double> i(0.0, 1.0);
    return {std::complex<double>(m2 - p2), std::complex<double>(p1 - m1), -i * (m1 + p1), -i * (m2 + p2)};
}

}  // namespace

double data_amplitude(int n, const IndexFamily<double>& fam) { return std::exp2(n * fam.amplitude_exp()); }

double default_time(int n, const IndexFamily<double>& fam) { return std::exp2(fam.T0_exp(n)); }

double data_bump_inverse(double r) {
    auto f = [r](double rho) { return bump(rho) * std::cyl_bessel_j(0.0, rho * r) * rho; };
    return 2.0 * M_PI * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kBumpRadius, 15, 1e-14);
}

GridSpec data_grid(int n, double period_scale) {
    // cutoff > (16/9) 2^n puts the Nyquist frequency above (8/3) 2^n, so j_max >= n.
    return GridSpec::resolving(period_scale, std::max(std::ldexp(1.0, n) + kBumpRadius, std::ldexp(16.0 / 9.0, n)));
}

GridSpec solve_grid(int n, double period_scale) {
    return GridSpec::resolving(period_scale, std::ldexp(1.0, n + 1) + 2.0 * kBumpRadius);
}

InitialData make_initial_data(int n, const IndexFamily<double>& fam, const GridSpec& grid, const BumpProfile& b) {
    if (n < 1) throw ConfigError("make_initial_data: n must be >= 1, got " + std::to_string(n));
    if (b.kind() != BumpKind::data_bump) throw ConfigError("make_initial_data: the data needs the data bump profile");
    const double reach = std::ldexp(1.0, n) + kBumpRadius;
    if (grid.dealias_cutoff() <= reach) {
        const GridSpec minimal = GridSpec::resolving(grid.period_scale(), reach);
        throw ConfigError("make_initial_data: grid N = " + std::to_string(grid.points()) +
                          " does not hold the data at n = " + std::to_string(n) + " (needs dealias cutoff > " +
                          std::to_string(reach) + "); minimal N at L = " + std::to_string(grid.period_scale()) +
                          " is " + std::to_string(minimal.points()));
    }
    const double a = data_amplitude(n, fam);
    const double s = std::ldexp(1.0, n);
    const std::complex<double> i(0.0, 1.0);
    auto minus = [s](double x1, double x2) { return bump(std::hypot(x1 - s, x2 - s)); };
    auto plus = [s](double x1, double x2) { return bump(std::hypot(x1 + s, x2 + s)); };
    Field2D u1 = from_density(grid, [&](double x1, double x2) -> std::complex<double> {
        return a * (minus(x1, x2) + plus(x1, x2));
    });
    Field2D u2 = from_density(grid, [&](double x1, double x2) -> std::complex<double> {
        return a * i * (minus(x1, x2) - plus(x1, x2));
    });
    return {n, fam, a, Field2D(grid, Representation::spectral), VectorField2D(std::move(u1), std::move(u2))};
}

const char* to_string(U1Term term) {
    switch (term) {
    case U1Term::cross21: return "cross21";
    case U1Term::cross12: return "cross12";
    case U1Term::self11: return "self11";
    case U1Term::self22: return "self22";
    }
    return "?";
}

std::array<std::complex<double>, 2> U1Spectrum::components() const {
    return {term[0] + term[2], term[1] + term[3]};
}

CubatureOptions default_inner_options() {
    CubatureOptions o;
    o.rel_tol = 1e-10;
    return o;
}

U1Spectrum u1_lowfreq_spectrum(const Eigen::Vector2d& xi, int n, const IndexFamily<double>& fam, double t,
                               const CubatureOptions& inner) {
    if (t < 0.0) throw DomainError("u1_lowfreq_spectrum: t must be nonnegative");
    U1Spectrum out;
    out.term.fill(0.0);
    if (t == 0.0 || xi.norm() >= 2.0 * kBumpRadius) return out;
    const double s = std::ldexp(1.0, n);
    const auto res = inner_integrals(xi, s, t, inner);
    const double a = data_amplitude(n, fam);
    const double scale = a * a * t * s;
    const auto terms = combine(res.value);
    for (std::size_t k = 0; k < 4; ++k) out.term[k] = scale * terms[k];
    out.error = scale * 2.0 * res.error.maxCoeff();
    out.converged = res.converged;
    return out;
}

std::complex<double> u1_lowfreq_spectrum(const Eigen::Vector2d& xi, int n, const IndexFamily<double>& fam, double t,
                                         U1Term term) {
    const auto sp = u1_lowfreq_spectrum(xi, n, fam, t);
    if (!sp.converged) throw NumericalError("u1_lowfreq_spectrum: inner quadrature did not converge");
    return sp[term];
}

U1Witness u1_witness(int n, const IndexFamily<double>& fam, double t, double rel_tol) {
    if (t < 0.0) throw DomainError("u1_witness: t must be nonnegative");
    U1Witness w;
    w.n = n;
    w.t = t;
    if (t == 0.0) return w;
    const double s = std::ldexp(1.0, n);
    const BumpProfile phi = BumpProfile::lp_generator();
    CubatureOptions inner = default_inner_options();
    inner.rel_tol = std::min(inner.rel_tol, 0.1 * rel_tol);
    bool inner_ok = true;
    // Components: signed witnesses of cross21, cross12, Im self11, Im self22 and the four
    // weighted squared magnitudes, all divided by (A^2 t s) or its square.
    using Vec8 = Eigen::Matrix<double, 8, 1>;
    auto outer = [&](double rho, double theta) -> Vec8 {
        const double weight = phi(16.0 * rho);
        if (weight == 0.0) return Vec8::Zero();
        const Eigen::Vector2d xi(rho * std::cos(theta), rho * std::sin(theta));
        const auto res = inner_integrals(xi, s, t, inner);
        inner_ok = inner_ok && res.converged;
        const auto c = combine(res.value);
        Vec8 v;
        v << c[0].real(), c[1].real(), c[2].imag(), c[3].imag(), std::norm(c[0]), std::norm(c[1]), std::norm(c[2]),
            std::norm(c[3]);
        return weight * v;
    };
    CubatureOptions opts;
    opts.rel_tol = rel_tol;
    opts.normwise = true;
    const auto res = integrate_annulus<8>(outer, kWitnessInner, kWitnessOuter, opts);

    const double a = data_amplitude(n, fam);
    const double scale = a * a * t * s;
    const std::complex<double> i(0.0, 1.0);
    w.term = {scale * res.value(0), scale * res.value(1), scale * i * res.value(2), scale * i * res.value(3)};
    w.cross_total = std::abs(w.term[0]) + std::abs(w.term[1]);
    w.G = std::abs(res.value(0)) + std::abs(res.value(1));
    w.cross_magnitude = scale * (std::sqrt(res.value(4)) + std::sqrt(res.value(5)));
    w.self_magnitude = scale * (std::sqrt(res.value(6)) + std::sqrt(res.value(7)));
    w.error = w.G > 0.0 ? res.error.head<2>().sum() / w.G : 0.0;
    w.converged = res.converged && inner_ok;
    if (!w.converged && w.error > 1e-8) {
        throw NumericalError("u1_witness: quadrature did not converge at n = " + std::to_string(n) +
                             " (relative error estimate " + std::to_string(w.error) + ")");
    }
    return w;
}

double kernel_taylor_constant(int n, double t, int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("kernel_taylor_constant: need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double s = std::ldexp(1.0, n);
    const Eigen::Vector2d shift(s, s);
    const double scale = t * s * s;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        // xi uniform in the annulus, eta uniform in the lens by rejection.
        const double r2 = kWitnessInner * kWitnessInner +
                          unit(rng) * (kWitnessOuter * kWitnessOuter - kWitnessInner * kWitnessInner);
        const double a = 2.0 * M_PI * unit(rng);
        const Eigen::Vector2d xi(std::sqrt(r2) * std::cos(a), std::sqrt(r2) * std::sin(a));
        Eigen::Vector2d eta;
        do {
            eta = Eigen::Vector2d(unit(rng) - 0.5, unit(rng) - 0.5);
        } while (eta.norm() >= kBumpRadius || (xi - eta).norm() >= kBumpRadius);
        const double base = t * std::exp(-t * xi.squaredNorm());
        for (const Eigen::Vector2d& e : {Eigen::Vector2d(eta + shift), Eigen::Vector2d(eta - shift)}) {
            const double ratio = duhamel_kernel(xi, e, t) / base;
            worst = std::max(worst, std::abs(ratio - 1.0) / scale);
        }
    }
    return worst;
}

VectorField2D grid_duhamel_u1(const InitialData& init, double t) {
    if (t < 0.0) throw DomainError("grid_duhamel_u1: t must be nonnegative");
    const GridSpec& grid = init.grid();
    VectorField2D acc = VectorField2D::zeros(grid, Representation::spectral);
    if (t == 0.0) return acc;
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    for (std::size_t k = 0; k < x.size(); ++k) {
        for (double sign : {-1.0, 1.0}) {
            if (k == 0 && sign < 0.0 && x[0] == 0.0) continue;
            const double tau = 0.5 * t * (1.0 + sign * x[k]);
            const VectorField2D u0 = heat_propagate(init.u0, tau);
            VectorField2D f = heat_propagate(advective_derivative(u0, u0), t - tau);
            acc -= std::complex<double>(0.5 * t * w[k]) * f;
        }
    }
    return acc;
}

CrossValidation cross_validate_u1(int n, const IndexFamily<double>& fam, double period_scale, double t) {
    // Only the low modes are compared, so the dealias condition suffices here.
    const GridSpec grid = GridSpec::resolving(period_scale, std::ldexp(1.0, n) + kBumpRadius);
    const InitialData init = make_initial_data(n, fam, grid);
    VectorField2D u1 = grid_duhamel_u1(init, t);
    const ComplexArray d1 = density(u1[0]);
    const ComplexArray d2 = density(u1[1]);

    CrossValidation cv;
    cv.n = n;
    cv.period_scale = period_scale;
    cv.grid_points = grid.points();
    const auto& k = grid.wavenumbers();
    const int npts = grid.points();
    double peak = 0.0;
    double worst = 0.0;
    for (int j = 0; j < npts; ++j) {
        if (std::abs(k(j)) > kWitnessOuter) continue;
        for (int i = 0; i < npts; ++i) {
            const Eigen::Vector2d xi(k(i), k(j));
            const double rho = xi.norm();
            if (rho < kWitnessInner || rho > kWitnessOuter) continue;
            const auto c = u1_lowfreq_spectrum(xi, n, fam, t).components();
            peak = std::max({peak, std::abs(c[0]), std::abs(c[1])});
            worst = std::max({worst, std::abs(c[0] - d1(i, j)), std::abs(c[1] - d2(i, j))});
            ++cv.points;
        }
    }
    cv.max_rel_error = peak > 0.0 ? worst / peak : 0.0;
    return cv;
}

U0Norms u0_norm_table(const InitialData& init, double q0, double s, double T, int samples) {
    if (!(q0 >= 1.0)) throw DomainError("u0_norm_table: q0 must be >= 1");
    if (!(T > 0.0) || samples < 2) throw DomainError("u0_norm_table: needs T > 0 and at least two samples");
    const double p = init.family.p;
    BlockNormTable table;
    table.j_min = init.grid().j_min();
    for (int m = 0; m <= samples; ++m) {
        const double tm = T * m / samples;
        table.append(tm, block_lp_norms(heat_propagate(init.u0, tm), q0));
    }
    U0Norms out;
    out.T = T;
    out.samples = samples + 1;
    out.data = besov_norm(init.u0, BesovParams{2.0 / p - 1.0, p, 1.0});
    out.linf = chemin_lerner_norm(table, 2.0 / q0 - 1.0 + s, 1.0, INFINITY);
    out.l2 = chemin_lerner_norm(table, 2.0 / q0, 1.0, 2.0);
    out.l1 = chemin_lerner_norm(table, 2.0 / q0 + 1.0, 1.0, 1.0);
    return out;
}

}  // namespace swlab
