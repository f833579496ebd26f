#pragma once

#include "swlab/grid.hpp"

#include <array>
#include <complex>
#include <functional>

namespace swlab {

enum class Representation { physical, spectral };

/// Complex samples of one scalar field on a torus grid, tagged with their
/// representation. Spectral values are unitary DFT coefficients.
class Field2D {
public:
    Field2D(GridSpec grid, Representation representation);
    Field2D(GridSpec grid, Representation representation, ComplexArray values);

    const GridSpec& grid() const { return grid_; }
    Representation representation() const { return representation_; }
    bool is_spectral() const { return representation_ == Representation::spectral; }

    const ComplexArray& values() const { return values_; }
    ComplexArray& values() { return values_; }

    Field2D& operator+=(const Field2D& other);
    Field2D& operator-=(const Field2D& other);
    Field2D& operator*=(std::complex<double> factor);

private:
    GridSpec grid_;
    Representation representation_;
    ComplexArray values_;
};

Field2D operator+(Field2D a, const Field2D& b);
Field2D operator-(Field2D a, const Field2D& b);
Field2D operator*(std::complex<double> factor, Field2D f);

/// u = (u^1, u^2).
struct VectorField2D {
    std::array<Field2D, 2> components;

    VectorField2D(Field2D first, Field2D second);
    static VectorField2D zeros(const GridSpec& grid, Representation representation);

    Field2D& operator[](int i) { return components[static_cast<std::size_t>(i)]; }
    const Field2D& operator[](int i) const { return components[static_cast<std::size_t>(i)]; }
    const GridSpec& grid() const { return components[0].grid(); }

    VectorField2D& operator+=(const VectorField2D& other);
    VectorField2D& operator-=(const VectorField2D& other);
};

VectorField2D operator+(VectorField2D a, const VectorField2D& b);
VectorField2D operator-(VectorField2D a, const VectorField2D& b);
VectorField2D operator*(std::complex<double> factor, VectorField2D u);

Field2D to_spectral(const Field2D& f);
Field2D to_physical(const Field2D& f);
/// Converts if needed; never throws on representation.
Field2D as_spectral(const Field2D& f);
Field2D as_physical(const Field2D& f);
VectorField2D as_spectral(const VectorField2D& u);
VectorField2D as_physical(const VectorField2D& u);

/// Samples a real or complex function of x on the grid.
Field2D sample_physical(const GridSpec& grid, const std::function<std::complex<double>(double, double)>& fn);

/// Builds a spectral field whose continuum Fourier density is fn(xi1, xi2), i.e.
/// f(x) = (1/L^2) sum_xi fn(xi) exp(i x.xi) on the torus.
Field2D from_density(const GridSpec& grid, const std::function<std::complex<double>(double, double)>& fn);
/// Continuum Fourier density L^2/N * c_hat of a field (inverse of from_density).
ComplexArray density(const Field2D& f);

/// Spectral multiplier i xi_axis (axis 1 or 2); result is spectral.
Field2D derivative(const Field2D& f, int axis);
Field2D divergence(const VectorField2D& u);
VectorField2D gradient(const Field2D& f);

/// e^{t Delta}; rejects t < 0. Result is spectral.
Field2D heat_propagate(const Field2D& f, double t);
VectorField2D heat_propagate(const VectorField2D& u, double t);

/// Multiplies every spectral coefficient by symbol(|xi|).
Field2D apply_radial_multiplier(const Field2D& f, const std::function<double(double)>& symbol);

/// (sum |f|^p cellarea)^{1/p}; grid maximum for p = inf. Rejects p < 1.
double lp_norm(const Field2D& f, double p);
/// L^p norm of the pointwise Euclidean magnitude.
double lp_norm(const VectorField2D& u, double p);
/// Same, for physical arrays already on the grid.
double lp_norm_of_samples(const RealArray& magnitude, double p, double cell_area);

/// Zeroes coefficients with either |xi_axis| >= (2/3) Nyquist. Requires spectral input.
Field2D dealias(const Field2D& f);
VectorField2D dealias(const VectorField2D& u);
/// True when no coefficient beyond the dealias cutoff exceeds tol * max |coefficient|.
bool is_dealiased(const Field2D& f, double tol = 1e-12);

/// Pointwise product, returned spectral and dealiased.
Field2D product(const Field2D& f, const Field2D& g);

/// (u . grad) v, each component a dealiased product; spectral.
VectorField2D advective_derivative(const VectorField2D& u, const VectorField2D& v);

/// Largest |Im f(x)| relative to max |f(x)| in physical space.
double imaginary_residue(const Field2D& f);
/// max |c(xi) - conj(c(-xi))| relative to max |c|.
double hermitian_defect(const Field2D& f);

/// Spectral energy sum |c|^2 (equals sum |f(x)|^2 in physical space).
double spectral_energy(const Field2D& f);

}  // namespace swlab
