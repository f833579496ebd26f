#pragma once

#include "swlab/errors.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace swlab {

/// Exponents attached to an integrability index p > 4:
///   2/p* + 2/p = 1,  4/q = 2/p* + 1/2,  2/q* + 2/q = 1,  4/r = 2/q* + 1/2,
///   eps = (19/30)(1/4 - 1/p).
/// Scalar may be double or an exact rational type; only field operations are used.
template <typename Scalar>
struct IndexFamily {
    Scalar p;
    Scalar p_star;
    Scalar q;
    Scalar q_star;
    Scalar r;
    Scalar eps;

    /// 1 - 4/p - 6 eps: growth exponent of the U1 witness in the critical norm.
    Scalar inflation_exp() const { return Scalar(1) - Scalar(4) / p - Scalar(6) * eps; }
    Scalar data_decay_exp() const { return -eps; }
    /// 1 - 2/p - eps: log2 of the data amplitude per unit n.
    Scalar amplitude_exp() const { return Scalar(1) - Scalar(2) / p - eps; }
    /// log2 of 2^{2n(1-2/p-eps)} 2^n.
    Scalar u1_witness_exp(int n) const { return Scalar(n) * (Scalar(2) * amplitude_exp() + Scalar(1)); }
    Scalar remainder_exp() const { return Scalar(2) / q - Scalar(2) / p - Scalar(5) * eps; }
    /// log2 T0 = -n(2 + 4 eps).
    Scalar T0_exp(int n) const { return -Scalar(n) * (Scalar(2) + Scalar(4) * eps); }

    /// Names of the violated relations; empty when the whole chain holds exactly
    /// (tol = 0) or to within tol on each identity.
    std::vector<std::string> violations(const Scalar& tol = Scalar(0)) const {
        std::vector<std::string> bad;
        auto strict = [&bad](bool ok, const char* name) {
            if (!ok) bad.emplace_back(name);
        };
        auto close = [&bad, &tol](const Scalar& lhs, const Scalar& rhs, const char* name) {
            Scalar d = lhs - rhs;
            if (d < Scalar(0)) d = -d;
            if (d > tol) bad.emplace_back(name);
        };
        strict(Scalar(2) <= p_star, "2 <= p*");
        strict(p_star < q, "p* < q");
        strict(q < Scalar(4), "q < 4");
        strict(Scalar(4) < r, "4 < r");
        strict(r < q_star, "r < q*");
        strict(q_star < p, "q* < p");
        close(Scalar(2) / r - Scalar(2) / p, (Scalar(2) / q - Scalar(2) / p) / Scalar(2), "2/r - 2/p = (2/q - 2/p)/2");
        close(Scalar(3) * (Scalar(1) - Scalar(4) / p) / Scalar(4), Scalar(2) / q - Scalar(2) / p,
              "(3/4)(1 - 4/p) = 2/q - 2/p");
        strict(Scalar(2) / q + Scalar(2) / r > Scalar(1), "2/q + 2/r > 1");
        strict(Scalar(6) * eps < Scalar(1) - Scalar(4) / p, "6 eps < 1 - 4/p");
        strict(Scalar(5) * eps > Scalar(2) / q - Scalar(2) / p, "5 eps > 2/q - 2/p");
        return bad;
    }
};

/// Builds the family for p and verifies its invariant chain; rejects p <= 4.
template <typename Scalar = double>
IndexFamily<Scalar> index_family(const Scalar& p, const Scalar& tol = Scalar(0)) {
    if (!(p > Scalar(4))) {
        std::ostringstream msg;
        msg << "index_family: p must exceed 4, got " << p;
        throw ConfigError(msg.str());
    }
    IndexFamily<Scalar> f;
    f.p = p;
    f.p_star = Scalar(2) / (Scalar(1) - Scalar(2) / p);
    f.q = Scalar(4) / (Scalar(2) / f.p_star + Scalar(1) / Scalar(2));
    f.q_star = Scalar(2) / (Scalar(1) - Scalar(2) / f.q);
    f.r = Scalar(4) / (Scalar(2) / f.q_star + Scalar(1) / Scalar(2));
    f.eps = Scalar(19) / Scalar(30) * (Scalar(1) / Scalar(4) - Scalar(1) / p);
    const auto bad = f.violations(tol);
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "index_family: invariant violated for p = " << p << ": " << bad.front();
        throw NumericalError(msg.str());
    }
    return f;
}

/// Double-precision family with the identities checked to 1e-12.
inline IndexFamily<double> index_family(double p) { return index_family<double>(p, 1e-12); }

}  // namespace swlab
