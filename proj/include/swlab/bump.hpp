#pragma once

#include <Eigen/Core>

#include <utility>

namespace swlab {

/// Smooth radial cutoff: 1 for rho <= 3/4, 0 for rho >= 4/3, C-infinity between.
double smooth_cutoff(double rho);

enum class BumpKind { lp_generator, data_bump };

/// Immutable radial profile evaluated at rho = |xi|.
///
/// lp_generator: phi(rho) = chi(rho/2) - chi(rho), supported in [3/4, 8/3];
/// its dyadic dilates telescope to a partition of unity on xi != 0.
/// data_bump: exp(-1/(1 - 4 rho^2)) on rho < 1/2, zero outside.
class BumpProfile {
public:
    static BumpProfile lp_generator() { return BumpProfile(BumpKind::lp_generator); }
    static BumpProfile data_bump() { return BumpProfile(BumpKind::data_bump); }

    BumpKind kind() const { return kind_; }
    double operator()(double rho) const;
    /// [inner, outer] radii of the support.
    std::pair<double, double> support() const;

    template <typename Derived>
    Eigen::ArrayXXd operator()(const Eigen::ArrayBase<Derived>& rho) const {
        return rho.derived().unaryExpr([this](double r) { return (*this)(r); });
    }

private:
    explicit BumpProfile(BumpKind kind) : kind_(kind) {}
    BumpKind kind_;
};

/// phi(2^{-j} rho) for the LP generator.
inline double lp_symbol(double rho, int j) {
    return BumpProfile::lp_generator()(std::ldexp(rho, -j));
}

}  // namespace swlab
