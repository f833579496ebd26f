#include "swlab/bump.hpp"

#include <cmath>

namespace swlab {

namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;

double flat_exp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double smooth_cutoff(double rho) {
    if (rho <= kInner) return 1.0;
    if (rho >= kOuter) return 0.0;
    const double s = (rho - kInner) / (kOuter - kInner);
    const double a = flat_exp(1.0 - s);
    const double b = flat_exp(s);
    return a / (a + b);
}

double BumpProfile::operator()(double rho) const {
    switch (kind_) {
    case BumpKind::lp_generator:
        return smooth_cutoff(0.5 * rho) - smooth_cutoff(rho);
    case BumpKind::data_bump: {
        const double x = 1.0 - 4.0 * rho * rho;
        return x > 0.0 ? std::exp(-1.0 / x) : 0.0;
    }
    }
    return 0.0;
}

std::pair<double, double> BumpProfile::support() const {
    if (kind_ == BumpKind::lp_generator) return {0.75, 8.0 / 3.0};
    return {0.0, 0.5};
}

}  // namespace swlab
