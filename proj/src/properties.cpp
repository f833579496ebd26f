#include "swlab/properties.hpp"

#include "swlab/besov.hpp"
#include "swlab/duhamel.hpp"
#include "swlab/index_family.hpp"
#include "swlab/littlewood_paley.hpp"
#include "swlab/solver.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace swlab {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Real field with random spectrum on lo <= |xi| <= hi, inside the dealias cutoff.
Field2D random_real_field(const GridSpec& g, std::mt19937_64& rng, double lo, double hi) {
    std::normal_distribution<double> gauss;
    ComplexArray c(g.points(), g.points());
    const auto& rho = g.frequency_modulus();
    const auto& mask = g.dealias_mask();
    for (int j = 0; j < g.points(); ++j) {
        for (int i = 0; i < g.points(); ++i) {
            const bool keep = rho(i, j) >= lo && rho(i, j) <= hi && mask(i, j) > 0.0;
            c(i, j) = keep ? std::complex<double>(gauss(rng), gauss(rng)) : 0.0;
        }
    }
    Field2D phys = to_physical(Field2D(g, Representation::spectral, c));
    phys.values() = phys.values().real().cast<std::complex<double>>();
    return dealias(to_spectral(phys));
}

double rel_diff(const Field2D& a, const Field2D& b) {
    const double scale = std::sqrt(spectral_energy(as_spectral(b)));
    const double diff = std::sqrt(spectral_energy(as_spectral(a) - as_spectral(b)));
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

std::vector<PropertyResult> run_properties(unsigned seed) {
    std::vector<PropertyResult> out;
    std::mt19937_64 rng(seed);
    const GridSpec g(1.0, 128);

    {
        const Field2D f = random_real_field(g, rng, 0.0, 40.0);
        const double err = rel_diff(to_spectral(to_physical(f)), f);
        out.push_back({"fft round trip <= 1e-12", err <= 1e-12, sci(err)});
        const Field2D p = to_physical(f);
        const double phys = (p.values().abs2().sum());
        const double spec = spectral_energy(f);
        const double perr = std::abs(phys - spec) / spec;
        out.push_back({"parseval <= 1e-12", perr <= 1e-12, sci(perr)});
    }
    {
        double worst = 0.0;
        const auto [lo, hi] = g.partition_range();
        const auto& rho = g.frequency_modulus();
        for (int j = 0; j < g.points(); ++j) {
            for (int i = 0; i < g.points(); ++i) {
                if (rho(i, j) < lo || rho(i, j) > hi) continue;
                double sum = 0.0;
                for (int k = g.j_min(); k <= g.j_max(); ++k) sum += block_symbol(rho(i, j), k);
                worst = std::max(worst, std::abs(sum - 1.0));
            }
        }
        out.push_back({"partition of unity <= 1e-12", worst <= 1e-12, sci(worst)});
    }
    {
        double worst = 0.0;
        const auto& rho = g.frequency_modulus();
        for (int a = g.j_min(); a <= g.j_max(); ++a) {
            for (int b = a + 2; b <= g.j_max(); ++b) {
                const RealArray prod = rho.unaryExpr([a](double r) { return block_symbol(r, a); }) *
                                       rho.unaryExpr([b](double r) { return block_symbol(r, b); });
                worst = std::max(worst, prod.abs().maxCoeff());
            }
        }
        out.push_back({"block quasi-orthogonality exact", worst == 0.0, sci(worst)});
    }
    {
        const auto [lo, hi] = g.partition_range();
        const Field2D f = random_real_field(g, rng, lo, 0.5 * g.dealias_cutoff());
        const Field2D h = random_real_field(g, rng, lo, 0.5 * g.dealias_cutoff());
        const BonyParts parts = bony_parts(f, h);
        const double err = rel_diff(parts.low_high + parts.high_low + parts.remainder, product(f, h));
        out.push_back({"bony reconstruction <= 1e-10", err <= 1e-10, sci(err)});
        (void)hi;
    }
    {
        const Field2D f = random_real_field(g, rng, 1.0, 30.0);
        const BesovParams bp{0.3, 3.0, 1.0};
        const double a = besov_norm(f, bp);
        const double b = besov_norm(std::complex<double>(-2.5) * f, bp);
        const double err = std::abs(b - 2.5 * a) / (2.5 * a);
        out.push_back({"besov homogeneity", err <= 1e-12, sci(err)});
    }
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double t = 1e-3 + unit(rng);
            const double xi2 = 4.0 * unit(rng);
            for (double side : {1.0 - 1e-3, 1.0 + 1e-3}) {
                const double gap = kKernelSeriesSwitch * side / t;
                const double a = duhamel_kernel_closed(xi2, gap, t);
                const double b = duhamel_kernel_series(xi2, gap, t);
                worst = std::max(worst, std::abs(a - b) / std::abs(a));
            }
        }
        out.push_back({"kernel branches agree at switch <= 1e-10", worst <= 1e-10, sci(worst)});
    }
    {
        std::uniform_real_distribution<double> logp(std::log(4.0), std::log(1e6));
        int bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const double p = std::exp(logp(rng));
            if (!(p > 4.0)) continue;
            if (!index_family<double>(p, 1e-12).violations(1e-12).empty()) ++bad;
        }
        out.push_back({"index family chain (1000 p)", bad == 0, std::to_string(bad) + " violations"});
    }
    {
        const GridSpec s(1.0, 32);
        const Field2D h0(s, Representation::spectral);
        const VectorField2D u0{random_real_field(s, rng, 0.0, 8.0), random_real_field(s, rng, 0.0, 8.0)};
        SolverConfig cfg(s);
        cfg.T = 0.05;
        cfg.quadratic_terms = false;
        cfg.linear_coupling = false;
        const auto res = solve(h0, u0, cfg);
        const VectorField2D exact = heat_propagate(u0, cfg.T);
        const auto& last = res.trajectory->u.back();
        const double err = std::max(rel_diff(last[0], exact[0]), rel_diff(last[1], exact[1]));
        out.push_back({"solver heat exactness <= 1e-12", err <= 1e-12, sci(err)});
    }
    {
        const GridSpec s(1.0, 32);
        Field2D h0 = random_real_field(s, rng, 0.0, 6.0);
        h0 *= 0.2 / lp_norm(h0, INFINITY);
        VectorField2D u0{random_real_field(s, rng, 0.0, 6.0), random_real_field(s, rng, 0.0, 6.0)};
        u0 = std::complex<double>(0.2 / lp_norm(u0, INFINITY)) * u0;
        SolverConfig cfg(s);
        cfg.T = 0.05;
        cfg.h_form = HForm::conservative;
        const auto res = solve(h0, u0, cfg);
        const auto& traj = *res.trajectory;
        const std::complex<double> m0 = as_spectral(traj.h[0]).values()(0, 0);
        double worst = 0.0;
        for (std::size_t k = 0; k < traj.h.size(); ++k) {
            worst = std::max(worst, std::abs(as_spectral(traj.h[k]).values()(0, 0) - m0));
        }
        const double scale = std::sqrt(spectral_energy(as_spectral(h0)));
        out.push_back({"conservative mass <= 1e-10", worst / scale <= 1e-10, sci(worst / scale)});
    }
    return out;
}

}  // namespace swlab
