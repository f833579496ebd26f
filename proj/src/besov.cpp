#include "swlab/besov.hpp"

#include "swlab/bump.hpp"
#include "swlab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swlab {

namespace {

Eigen::VectorXd block_norms_of(const GridSpec& grid, const std::vector<const Field2D*>& comps, double p) {
    if (!(p >= 1.0)) throw DomainError("block_lp_norms: p must be >= 1");
    std::vector<Field2D> spectral;
    for (const Field2D* c : comps) spectral.push_back(as_spectral(*c));

    const auto& modulus = grid.frequency_modulus();
    double r_lo = std::numeric_limits<double>::infinity();
    double r_hi = -1.0;
    for (const auto& c : spectral) {
        const RealArray occupied = (c.values().abs2() > 0.0).cast<double>();
        if (occupied.maxCoeff() == 0.0) continue;
        r_hi = std::max(r_hi, (modulus * occupied).maxCoeff());
        r_lo = std::min(r_lo, (modulus + (1.0 - occupied) * 1e300).minCoeff());
    }
    Eigen::VectorXd norms = Eigen::VectorXd::Zero(grid.band_size());
    for (int j = grid.j_min(); j <= grid.j_max(); ++j) {
        if (std::ldexp(8.0 / 3.0, j) <= r_lo || std::ldexp(0.75, j) >= r_hi) continue;
        const RealArray symbol = modulus.unaryExpr([j](double rho) { return block_symbol(rho, j); });
        bool empty = true;
        for (const auto& c : spectral) {
            if ((c.values().abs2() * symbol).maxCoeff() > 0.0) {
                empty = false;
                break;
            }
        }
        if (empty) continue;
        RealArray magnitude2 = RealArray::Zero(grid.points(), grid.points());
        for (const auto& c : spectral) {
            magnitude2 += grid.fft().inverse(c.values() * symbol).abs2();
        }
        norms(j - grid.j_min()) = lp_norm_of_samples(magnitude2.sqrt(), p, grid.cell_area());
    }
    return norms;
}

double out_of_band(const GridSpec& grid, const std::vector<const Field2D*>& comps) {
    const int lo = grid.j_min();
    const int hi = grid.j_max();
    const RealArray miss = grid.frequency_modulus().unaryExpr([lo, hi](double rho) {
        return 1.0 - (smooth_cutoff(std::ldexp(rho, -hi - 1)) - smooth_cutoff(std::ldexp(rho, -lo)));
    });
    double total = 0.0;
    double missed = 0.0;
    for (const Field2D* c : comps) {
        const RealArray e = as_spectral(*c).values().abs2();
        total += e.sum();
        missed += (e * miss.square()).sum();
    }
    return total > 0.0 ? missed / total : 0.0;
}

double log1p_ratio_guard(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

void BesovParams::validate() const {
    if (!(p >= 1.0)) throw DomainError("BesovParams: p must be >= 1, got " + std::to_string(p));
    if (!(r >= 1.0)) throw DomainError("BesovParams: r must be >= 1, got " + std::to_string(r));
    if (!std::isfinite(s)) throw DomainError("BesovParams: s must be finite");
}

Eigen::VectorXd block_lp_norms(const Field2D& f, double p) { return block_norms_of(f.grid(), {&f}, p); }

Eigen::VectorXd block_lp_norms(const VectorField2D& u, double p) {
    return block_norms_of(u.grid(), {&u[0], &u[1]}, p);
}

double weighted_block_sum(const Eigen::VectorXd& block_norms, int j_min, double s, double r) {
    Eigen::VectorXd weighted(block_norms.size());
    for (Eigen::Index k = 0; k < block_norms.size(); ++k) {
        weighted(k) = std::exp2(s * static_cast<double>(j_min + k)) * block_norms(k);
    }
    if (weighted.size() == 0) return 0.0;
    if (std::isinf(r)) return weighted.maxCoeff();
    if (r == 1.0) return weighted.sum();
    const double peak = weighted.maxCoeff();
    if (peak == 0.0) return 0.0;
    return peak * std::pow((weighted / peak).array().pow(r).sum(), 1.0 / r);
}

double besov_norm(const Field2D& f, const BesovParams& bp) { return besov_report(f, bp).value; }
double besov_norm(const VectorField2D& u, const BesovParams& bp) { return besov_report(u, bp).value; }

BesovReport besov_report(const Field2D& f, const BesovParams& bp) {
    bp.validate();
    const GridSpec& g = f.grid();
    return {weighted_block_sum(block_lp_norms(f, bp.p), g.j_min(), bp.s, bp.r), g.j_min(), g.j_max(),
            out_of_band(g, {&f})};
}

BesovReport besov_report(const VectorField2D& u, const BesovParams& bp) {
    bp.validate();
    const GridSpec& g = u.grid();
    return {weighted_block_sum(block_lp_norms(u, bp.p), g.j_min(), bp.s, bp.r), g.j_min(), g.j_max(),
            out_of_band(g, {&u[0], &u[1]})};
}

void BlockNormTable::append(double t, const Eigen::VectorXd& row) {
    if (norms.rows() > 0 && row.size() != norms.cols()) throw DomainError("BlockNormTable: band width changed");
    if (times.size() > 0 && !(t > times(times.size() - 1))) {
        throw DomainError("BlockNormTable: times must be strictly increasing");
    }
    times.conservativeResize(times.size() + 1);
    times(times.size() - 1) = t;
    norms.conservativeResize(norms.rows() + 1, row.size());
    norms.row(norms.rows() - 1) = row.transpose();
}

double time_lebesgue_norm(const Eigen::VectorXd& times, const Eigen::VectorXd& values, double q) {
    if (!(q >= 1.0)) throw DomainError("time_lebesgue_norm: q must be >= 1");
    if (times.size() != values.size() || times.size() == 0) throw DomainError("time_lebesgue_norm: bad samples");
    const Eigen::VectorXd a = values.cwiseAbs();
    const double peak = a.maxCoeff();
    if (std::isinf(q)) return peak;
    if (times.size() < 2) throw DomainError("time_lebesgue_norm: finite q needs at least two samples");
    if (peak == 0.0) return 0.0;
    const Eigen::VectorXd g = (a / peak).array().pow(q).matrix();
    double integral = 0.0;
    for (Eigen::Index m = 0; m + 1 < times.size(); ++m) {
        integral += 0.5 * (times(m + 1) - times(m)) * (g(m) + g(m + 1));
    }
    return peak * std::pow(integral, 1.0 / q);
}

double chemin_lerner_norm(const BlockNormTable& table, double s, double r, double q) {
    Eigen::VectorXd per_block(table.norms.cols());
    for (Eigen::Index k = 0; k < table.norms.cols(); ++k) {
        per_block(k) = time_lebesgue_norm(table.times, table.norms.col(k), q);
    }
    return weighted_block_sum(per_block, table.j_min, s, r);
}

double time_besov_norm(const BlockNormTable& table, double s, double r, double q) {
    Eigen::VectorXd per_time(table.norms.rows());
    for (Eigen::Index m = 0; m < table.norms.rows(); ++m) {
        per_time(m) = weighted_block_sum(table.norms.row(m).transpose(), table.j_min, s, r);
    }
    return time_lebesgue_norm(table.times, per_time, q);
}

WitnessValue witness_functional(const Field2D& f) {
    const GridSpec& g = f.grid();
    if (g.period_scale() < kWitnessMinPeriodScale) {
        throw DomainError("witness_functional: lattice spacing 1/L = " + std::to_string(g.frequency_step()) +
                          " cannot resolve the annulus 3/64 <= |xi| <= 1/6; requires L >= " +
                          std::to_string(kWitnessMinPeriodScale));
    }
    const BumpProfile phi = BumpProfile::lp_generator();
    const RealArray weight = g.frequency_modulus().unaryExpr([&phi](double rho) { return phi(16.0 * rho); });
    const std::complex<double> value = (as_spectral(f).values() * weight).sum() / static_cast<double>(g.points());
    return {value, std::abs(value), std::arg(value)};
}

std::array<WitnessValue, 2> witness_functional(const VectorField2D& u) {
    return {witness_functional(u[0]), witness_functional(u[1])};
}

double check_product_inequality(const Field2D& f, const Field2D& g, double s, double p) {
    const BesovParams bp{s, p, 1.0};
    const double fg = besov_norm(product(f, g), bp);
    const double den = lp_norm(g, INFINITY) * besov_norm(f, bp) + lp_norm(f, INFINITY) * besov_norm(g, bp);
    return log1p_ratio_guard(fg, den);
}

double check_composition_inequality(const Field2D& h, double s, double p) {
    const double sup = lp_norm(h, INFINITY);
    if (!(sup < 1.0)) throw DomainError("check_composition_inequality: needs ||h||_inf < 1 for ln(1 + h)");
    if (sup == 0.0) return 0.0;
    const Field2D hp = as_physical(h);
    Field2D composed(h.grid(), Representation::physical, (1.0 + hp.values()).log());
    const BesovParams bp{s, p, 1.0};
    const double exponent = std::ceil(s) + 2.0;
    const double den = std::pow(1.0 + sup, exponent) * besov_norm(h, bp);
    return log1p_ratio_guard(besov_norm(composed, bp), den);
}

double check_bilinear_estimate(const Field2D& f, const Field2D& g, double p2, double q2) {
    if (!(p2 >= 2.0 && p2 <= 4.0 && q2 >= 4.0 && std::isfinite(q2) && 2.0 / p2 + 2.0 / q2 > 1.0)) {
        throw DomainError("check_bilinear_estimate: needs 2 <= p <= 4 <= q < inf and 2/p + 2/q > 1");
    }
    const BesovParams fp{2.0 / p2 - 1.0, p2, 1.0};
    const BesovParams gq{2.0 / q2, q2, 1.0};
    const double num = besov_norm(product(f, g), fp);
    return log1p_ratio_guard(num, besov_norm(f, fp) * besov_norm(g, gq));
}

}  // namespace swlab
