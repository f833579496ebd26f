#pragma once

#include "swlab/bump.hpp"
#include "swlab/cubature.hpp"
#include "swlab/field.hpp"
#include "swlab/index_family.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstdint>

namespace swlab {

/// 2^{n(1-2/p-eps)}.
double data_amplitude(int n, const IndexFamily<double>& fam);
/// T0 = 2^{-n(2+4 eps)}.
double default_time(int n, const IndexFamily<double>& fam);

/// Inverse transform of the data bump, int phi_b(xi) e^{i x.xi} dxi at |x| = r.
double data_bump_inverse(double r);

/// Smallest grid on scale L whose dealias cutoff holds the data spectrum (2^n + 1/2 per axis)
/// and whose dyadic band reaches block n, so Besov norms of the data are complete.
GridSpec data_grid(int n, double period_scale);
/// Smallest grid on scale L whose dealias cutoff also holds the quadratic modes (2^{n+1} + 1).
GridSpec solve_grid(int n, double period_scale);

/// h0 = 0 and u0 with spectrum
///   A (phi_b(xi - 2^n e) + phi_b(xi + 2^n e), i phi_b(xi - 2^n e) - i phi_b(xi + 2^n e)),
/// A = data_amplitude(n), e = (1, 1). In physical space u0 = 2A (cos, -sin)(2^n x.e) phi_b-inverse(x).
struct InitialData {
    int n;
    IndexFamily<double> family;
    double amplitude;
    Field2D h0;
    VectorField2D u0;

    const GridSpec& grid() const { return h0.grid(); }
};

/// Rejects n < 1, a bump other than the data bump, and grids that do not hold the data.
InitialData make_initial_data(int n, const IndexFamily<double>& fam, const GridSpec& grid,
                              const BumpProfile& bump = BumpProfile::data_bump());

/// Quadratic terms (U0 . grad U0)^a split as U0^b d_b U0^a.
enum class U1Term { cross21, cross12, self11, self22 };
const char* to_string(U1Term term);

/// Fourier density of U1(t) = -int_0^t e^{(t-tau)Delta} (U0 . grad U0)(tau) dtau at a
/// frequency |xi| < 1, per quadratic term. Only the interaction of the two data bumps
/// reaches |xi| < 1.
struct U1Spectrum {
    std::array<std::complex<double>, 4> term;  ///< indexed by U1Term
    double error = 0.0;                         ///< estimated absolute quadrature error
    bool converged = true;

    std::complex<double> operator[](U1Term t) const { return term[static_cast<std::size_t>(t)]; }
    /// (U1^1, U1^2) = (cross21 + self11, cross12 + self22).
    std::array<std::complex<double>, 2> components() const;
};

/// Inner quadrature tolerance used by default.
CubatureOptions default_inner_options();

U1Spectrum u1_lowfreq_spectrum(const Eigen::Vector2d& xi, int n, const IndexFamily<double>& fam, double t,
                               const CubatureOptions& inner = default_inner_options());
std::complex<double> u1_lowfreq_spectrum(const Eigen::Vector2d& xi, int n, const IndexFamily<double>& fam, double t,
                                         U1Term term);

/// int phi_LP(16 xi) U1_hat(xi) dxi over 3/64 <= |xi| <= 1/6, per term.
struct U1Witness {
    int n = 0;
    double t = 0.0;
    std::array<std::complex<double>, 4> term{};  ///< signed witness per U1Term
    double cross_total = 0.0;                    ///< |cross21| + |cross12|
    double G = 0.0;                              ///< cross_total / (t 2^n A^2)
    /// sqrt(int phi_LP(16 xi) |U1_term|^2 dxi) summed over the self and the cross pair.
    double self_magnitude = 0.0;
    double cross_magnitude = 0.0;
    double error = 0.0;  ///< relative to cross_total
    bool converged = true;

    double self_to_cross() const { return cross_magnitude > 0.0 ? self_magnitude / cross_magnitude : 0.0; }
};

U1Witness u1_witness(int n, const IndexFamily<double>& fam, double t, double rel_tol = 1e-9);
inline U1Witness u1_witness(int n, const IndexFamily<double>& fam) {
    return u1_witness(n, fam, default_time(n, fam));
}

/// max |K(xi, eta' +- 2^n e, t) / (t e^{-t|xi|^2}) - 1| / (t 4^n) over random samples of the
/// witness integrand support (xi in the witness annulus, eta' in B(0,1/2) cap B(xi,1/2)).
double kernel_taylor_constant(int n, double t, int samples, std::uint64_t seed);

/// U1(t) on the grid: Gauss-Legendre (16 nodes) in tau with the exact heat flow U0(tau),
/// products dealiased. Spectral.
VectorField2D grid_duhamel_u1(const InitialData& init, double t);

/// Continuum U1 vs grid U1 at all lattice frequencies in the witness annulus.
struct CrossValidation {
    int n = 0;
    int points = 0;
    double max_rel_error = 0.0;  ///< max |grid - continuum| / max |continuum|
    double period_scale = 0.0;
    int grid_points = 0;
};
CrossValidation cross_validate_u1(int n, const IndexFamily<double>& fam, double period_scale, double t);

/// Norms of U0 = e^{t Delta} u0 at integrability q0 and extra regularity s on [0, T]:
///   linf = ||U0||_{L~inf_T(B^{2/q0-1+s}_{q0,1})}, l2 = ||U0||_{L~2_T(B^{2/q0}_{q0,1})},
///   l1 = ||U0||_{L~1_T(B^{2/q0+1}_{q0,1})}, data = ||u0||_{B^{2/p-1}_{p,1}}.
struct U0Norms {
    double data = 0.0;
    double linf = 0.0;
    double l2 = 0.0;
    double l1 = 0.0;
    double T = 0.0;
    int samples = 0;
};
U0Norms u0_norm_table(const InitialData& init, double q0, double s, double T, int samples = 64);

}  // namespace swlab
