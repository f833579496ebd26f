#pragma once

#include <Eigen/Core>

namespace swlab {

/// |D| t below this switches the kernel to its Taylor series.
constexpr double kKernelSeriesSwitch = 1e-3;
/// Series terms m = 0..8 of t e^{-t|xi|^2} sum (-Dt)^m / (m+1)!.
constexpr int kKernelSeriesTerms = 9;

/// D = |eta|^2 + |xi - eta|^2 - |xi|^2.
double kernel_exponent_gap(const Eigen::Vector2d& xi, const Eigen::Vector2d& eta);

/// int_0^t e^{-(t-tau)|xi|^2} e^{-tau(|eta|^2 + |xi-eta|^2)} dtau
///   = e^{-t|xi|^2} (1 - e^{-Dt}) / D.
double duhamel_kernel(const Eigen::Vector2d& xi, const Eigen::Vector2d& eta, double t);
/// Same in terms of |xi|^2 and D.
double duhamel_kernel(double xi_squared, double gap, double t);

/// The two branches, exposed for testing the switch.
double duhamel_kernel_closed(double xi_squared, double gap, double t);
double duhamel_kernel_series(double xi_squared, double gap, double t);

}  // namespace swlab
