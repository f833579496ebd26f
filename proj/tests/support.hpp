#pragma once

#include "swlab/field.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <random>

namespace swlab::testing {

/// Real field whose spectrum is random on lo <= |xi| <= hi and inside the dealias cutoff.
inline Field2D random_real_field(const GridSpec& g, std::mt19937_64& rng, double lo, double hi) {
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

/// Complex field with arbitrary random samples (no band limit).
inline Field2D random_complex_field(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    ComplexArray c(g.points(), g.points());
    for (int j = 0; j < g.points(); ++j) {
        for (int i = 0; i < g.points(); ++i) c(i, j) = {gauss(rng), gauss(rng)};
    }
    return {g, Representation::physical, c};
}

inline Field2D plane_wave(const GridSpec& g, int k1, int k2) {
    const double l = g.period_scale();
    return sample_physical(g, [=](double x1, double x2) {
        return std::exp(std::complex<double>(0.0, (k1 * x1 + k2 * x2) / l));
    });
}

/// ||a - b|| / ||b|| in the spectral l2 sense.
inline double rel_l2(const Field2D& a, const Field2D& b) {
    const double scale = std::sqrt(spectral_energy(as_spectral(b)));
    const double diff = std::sqrt(spectral_energy(as_spectral(a) - as_spectral(b)));
    return scale > 0.0 ? diff / scale : diff;
}

/// Adaptive Gauss-Kronrod on [a, b].
template <typename F>
double integrate_1d(F f, double a, double b, double tol = 1e-14) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

/// Inverse transform of the data bump at radius r, by direct Hankel quadrature.
inline double bump_hat(double r) {
    auto f = [r](double rho) {
        const double x = 1.0 - 4.0 * rho * rho;
        return (x > 0.0 ? std::exp(-1.0 / x) : 0.0) * std::cyl_bessel_j(0.0, rho * r) * rho;
    };
    return 2.0 * M_PI * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 0.5, 0);
}

}  // namespace swlab::testing
