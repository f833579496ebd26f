#include "swlab/cubature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace swlab::detail {

const KronrodTable& kronrod15() {
    static const KronrodTable table = [] {
        using boost::math::quadrature::gauss;
        using boost::math::quadrature::gauss_kronrod;
        const auto& xk = gauss_kronrod<double, 15>::abscissa();
        const auto& wk = gauss_kronrod<double, 15>::weights();
        const auto& wg = gauss<double, 7>::weights();
        KronrodTable t{};
        // Boost stores the nonnegative half, 0 first; Gauss nodes sit at even positions.
        for (std::size_t i = 0; i < xk.size(); ++i) {
            const double g = (i % 2 == 0) ? wg[i / 2] : 0.0;
            t.node[7 + i] = xk[i];
            t.kronrod[7 + i] = wk[i];
            t.gauss[7 + i] = g;
            t.node[7 - i] = -xk[i];
            t.kronrod[7 - i] = wk[i];
            t.gauss[7 - i] = g;
        }
        return t;
    }();
    return table;
}

}  // namespace swlab::detail
