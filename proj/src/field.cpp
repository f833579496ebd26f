#include "swlab/field.hpp"

#include "swlab/errors.hpp"

#include <cmath>
#include <limits>

namespace swlab {

namespace {

void require_same_grid(const Field2D& a, const Field2D& b, const char* op) {
    if (a.grid() != b.grid()) throw DomainError(std::string(op) + ": fields live on different grids");
    if (a.representation() != b.representation()) {
        throw DomainError(std::string(op) + ": mismatched representation tags");
    }
}

}  // namespace

Field2D::Field2D(GridSpec grid, Representation representation)
    : grid_(std::move(grid)), representation_(representation),
      values_(ComplexArray::Zero(grid_.points(), grid_.points())) {}

Field2D::Field2D(GridSpec grid, Representation representation, ComplexArray values)
    : grid_(std::move(grid)), representation_(representation), values_(std::move(values)) {
    if (values_.rows() != grid_.points() || values_.cols() != grid_.points()) {
        throw DomainError("Field2D: value array shape does not match the grid");
    }
}

Field2D& Field2D::operator+=(const Field2D& other) {
    require_same_grid(*this, other, "operator+=");
    values_ += other.values_;
    return *this;
}

Field2D& Field2D::operator-=(const Field2D& other) {
    require_same_grid(*this, other, "operator-=");
    values_ -= other.values_;
    return *this;
}

Field2D& Field2D::operator*=(std::complex<double> factor) {
    values_ *= factor;
    return *this;
}

Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
Field2D operator*(std::complex<double> factor, Field2D f) { return f *= factor; }

VectorField2D::VectorField2D(Field2D first, Field2D second)
    : components{std::move(first), std::move(second)} {
    if (components[0].grid() != components[1].grid() ||
        components[0].representation() != components[1].representation()) {
        throw DomainError("VectorField2D: components must share grid and representation");
    }
}

VectorField2D VectorField2D::zeros(const GridSpec& grid, Representation representation) {
    return {Field2D(grid, representation), Field2D(grid, representation)};
}

VectorField2D& VectorField2D::operator+=(const VectorField2D& other) {
    components[0] += other.components[0];
    components[1] += other.components[1];
    return *this;
}

VectorField2D& VectorField2D::operator-=(const VectorField2D& other) {
    components[0] -= other.components[0];
    components[1] -= other.components[1];
    return *this;
}

VectorField2D operator+(VectorField2D a, const VectorField2D& b) { return a += b; }
VectorField2D operator-(VectorField2D a, const VectorField2D& b) { return a -= b; }
VectorField2D operator*(std::complex<double> factor, VectorField2D u) {
    u[0] *= factor;
    u[1] *= factor;
    return u;
}

Field2D to_spectral(const Field2D& f) {
    if (f.is_spectral()) throw DomainError("to_spectral: field is already spectral");
    return {f.grid(), Representation::spectral, f.grid().fft().forward(f.values())};
}

Field2D to_physical(const Field2D& f) {
    if (!f.is_spectral()) throw DomainError("to_physical: field is already physical");
    return {f.grid(), Representation::physical, f.grid().fft().inverse(f.values())};
}

Field2D as_spectral(const Field2D& f) { return f.is_spectral() ? f : to_spectral(f); }
Field2D as_physical(const Field2D& f) { return f.is_spectral() ? to_physical(f) : f; }
VectorField2D as_spectral(const VectorField2D& u) { return {as_spectral(u[0]), as_spectral(u[1])}; }
VectorField2D as_physical(const VectorField2D& u) { return {as_physical(u[0]), as_physical(u[1])}; }

Field2D sample_physical(const GridSpec& grid, const std::function<std::complex<double>(double, double)>& fn) {
    const int n = grid.points();
    ComplexArray values(n, n);
    for (int j = 0; j < n; ++j) {
        const double x2 = grid.coordinate(j);
        for (int i = 0; i < n; ++i) values(i, j) = fn(grid.coordinate(i), x2);
    }
    return {grid, Representation::physical, std::move(values)};
}

Field2D from_density(const GridSpec& grid, const std::function<std::complex<double>(double, double)>& fn) {
    const int n = grid.points();
    const double scale = n / (grid.period_scale() * grid.period_scale());
    const auto& w = grid.wavenumbers();
    ComplexArray values(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) values(i, j) = scale * fn(w(i), w(j));
    }
    return {grid, Representation::spectral, std::move(values)};
}

ComplexArray density(const Field2D& f) {
    const double l = f.grid().period_scale();
    return as_spectral(f).values() * (l * l / f.grid().points());
}

Field2D derivative(const Field2D& f, int axis) {
    Field2D out = as_spectral(f);
    const auto& w = f.grid().derivative_wavenumbers();
    const int n = f.grid().points();
    const std::complex<double> i_unit(0.0, 1.0);
    if (axis == 1) {
        out.values().colwise() *= (i_unit * w.cast<std::complex<double>>());
    } else if (axis == 2) {
        for (int j = 0; j < n; ++j) out.values().col(j) *= i_unit * w(j);
    } else {
        throw DomainError("derivative: axis must be 1 or 2");
    }
    return out;
}

Field2D divergence(const VectorField2D& u) { return derivative(u[0], 1) + derivative(u[1], 2); }

VectorField2D gradient(const Field2D& f) { return {derivative(f, 1), derivative(f, 2)}; }

Field2D heat_propagate(const Field2D& f, double t) {
    if (!(t >= 0.0)) throw DomainError("heat_propagate: time must be nonnegative");
    Field2D out = as_spectral(f);
    if (t > 0.0) out.values() *= (-t * f.grid().frequency_squared()).exp();
    return out;
}

VectorField2D heat_propagate(const VectorField2D& u, double t) {
    return {heat_propagate(u[0], t), heat_propagate(u[1], t)};
}

Field2D apply_radial_multiplier(const Field2D& f, const std::function<double(double)>& symbol) {
    Field2D out = as_spectral(f);
    out.values() *= f.grid().frequency_modulus().unaryExpr(symbol);
    return out;
}

double lp_norm_of_samples(const RealArray& magnitude, double p, double cell_area) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    const double peak = magnitude.maxCoeff();
    if (std::isinf(p)) return peak;
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    if (p == 2.0) {
        sum = (magnitude / peak).square().sum();
    } else {
        sum = (magnitude / peak).pow(p).sum();
    }
    return peak * std::pow(sum * cell_area, 1.0 / p);
}

double lp_norm(const Field2D& f, double p) {
    return lp_norm_of_samples(as_physical(f).values().abs(), p, f.grid().cell_area());
}

double lp_norm(const VectorField2D& u, double p) {
    const Field2D a = as_physical(u[0]);
    const Field2D b = as_physical(u[1]);
    const RealArray magnitude = (a.values().abs2() + b.values().abs2()).sqrt();
    return lp_norm_of_samples(magnitude, p, u.grid().cell_area());
}

Field2D dealias(const Field2D& f) {
    if (!f.is_spectral()) throw DomainError("dealias: field must be spectral");
    Field2D out = f;
    out.values() *= f.grid().dealias_mask();
    return out;
}

VectorField2D dealias(const VectorField2D& u) { return {dealias(u[0]), dealias(u[1])}; }

bool is_dealiased(const Field2D& f, double tol) {
    const Field2D s = as_spectral(f);
    const RealArray mag = s.values().abs();
    const double peak = mag.maxCoeff();
    if (peak == 0.0) return true;
    const double outside = (mag * (1.0 - f.grid().dealias_mask())).maxCoeff();
    return outside <= tol * peak;
}

Field2D product(const Field2D& f, const Field2D& g) {
    if (f.grid() != g.grid()) throw DomainError("product: fields live on different grids");
    const Field2D a = as_physical(f);
    const Field2D b = as_physical(g);
    Field2D pointwise(f.grid(), Representation::physical, a.values() * b.values());
    return dealias(to_spectral(pointwise));
}

VectorField2D advective_derivative(const VectorField2D& u, const VectorField2D& v) {
    if (u.grid() != v.grid()) throw DomainError("advective_derivative: fields live on different grids");
    const VectorField2D up = as_physical(u);
    const GridSpec& grid = u.grid();
    auto component = [&](int a) {
        const ComplexArray d1 = to_physical(derivative(v[a], 1)).values();
        const ComplexArray d2 = to_physical(derivative(v[a], 2)).values();
        Field2D pointwise(grid, Representation::physical, up[0].values() * d1 + up[1].values() * d2);
        return dealias(to_spectral(pointwise));
    };
    return {component(0), component(1)};
}

double imaginary_residue(const Field2D& f) {
    const Field2D p = as_physical(f);
    const double peak = p.values().abs().maxCoeff();
    if (peak == 0.0) return 0.0;
    return p.values().imag().abs().maxCoeff() / peak;
}

double hermitian_defect(const Field2D& f) {
    const Field2D s = as_spectral(f);
    const int n = f.grid().points();
    const auto& c = s.values();
    const double peak = c.abs().maxCoeff();
    if (peak == 0.0) return 0.0;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const int jr = (n - j) % n;
        for (int i = 0; i < n; ++i) {
            const int ir = (n - i) % n;
            worst = std::max(worst, std::abs(c(i, j) - std::conj(c(ir, jr))));
        }
    }
    return worst / peak;
}

double spectral_energy(const Field2D& f) { return f.values().abs2().sum(); }

}  // namespace swlab
