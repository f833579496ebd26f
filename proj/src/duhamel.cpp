#include "swlab/duhamel.hpp"

#include "swlab/errors.hpp"

#include <cmath>

namespace swlab {

double kernel_exponent_gap(const Eigen::Vector2d& xi, const Eigen::Vector2d& eta) {
    return eta.squaredNorm() + (xi - eta).squaredNorm() - xi.squaredNorm();
}

double duhamel_kernel_closed(double xi_squared, double gap, double t) {
    return std::exp(-t * xi_squared) * (-std::expm1(-gap * t)) / gap;
}

double duhamel_kernel_series(double xi_squared, double gap, double t) {
    const double x = -gap * t;
    // Horner on sum_{m=0}^{8} x^m / (m+1)!
    double acc = 0.0;
    for (int m = kKernelSeriesTerms - 1; m >= 0; --m) acc = 1.0 + acc * x / (m + 2);
    return t * std::exp(-t * xi_squared) * acc;
}

double duhamel_kernel(double xi_squared, double gap, double t) {
    if (t < 0.0) throw DomainError("duhamel_kernel: t must be nonnegative");
    if (t == 0.0) return 0.0;
    if (std::abs(gap) * t < kKernelSeriesSwitch) return duhamel_kernel_series(xi_squared, gap, t);
    return duhamel_kernel_closed(xi_squared, gap, t);
}

double duhamel_kernel(const Eigen::Vector2d& xi, const Eigen::Vector2d& eta, double t) {
    return duhamel_kernel(xi.squaredNorm(), kernel_exponent_gap(xi, eta), t);
}

}  // namespace swlab
