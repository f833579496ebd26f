#pragma once

#include "swlab/errors.hpp"
#include "swlab/field.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace swlab {

/// Regularity s, integrability p and summation exponent r of a homogeneous Besov norm.
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;

    void validate() const;
};

/// ||Delta_j f||_{L^p} over the resolved band; entry k is block j_min + k.
Eigen::VectorXd block_lp_norms(const Field2D& f, double p);
Eigen::VectorXd block_lp_norms(const VectorField2D& u, double p);

/// ell^r norm of (2^{js} a_j), entry k of `block_norms` being block j_min + k.
double weighted_block_sum(const Eigen::VectorXd& block_norms, int j_min, double s, double r);

double besov_norm(const Field2D& f, const BesovParams& bp);
double besov_norm(const VectorField2D& u, const BesovParams& bp);

/// Besov norm together with the band it was summed over and the fraction of the
/// field's spectral energy that the band's partition of unity does not cover.
struct BesovReport {
    double value = 0.0;
    int j_min = 0;
    int j_max = 0;
    double out_of_band_fraction = 0.0;
};
BesovReport besov_report(const Field2D& f, const BesovParams& bp);
BesovReport besov_report(const VectorField2D& u, const BesovParams& bp);

/// Samples f(t_0), ..., f(t_M) with strictly increasing times on one grid.
template <typename FieldT>
class TimeSeries {
public:
    void append(double t, FieldT field) {
        if (!times_.empty()) {
            if (!(t > times_.back())) throw DomainError("TimeSeries: times must be strictly increasing");
            if (field.grid() != samples_.front().grid()) throw DomainError("TimeSeries: grid changed between samples");
        }
        times_.push_back(t);
        samples_.push_back(std::move(field));
    }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    const std::vector<double>& times() const { return times_; }
    const FieldT& operator[](std::size_t i) const { return samples_[i]; }
    const FieldT& back() const { return samples_.back(); }
    const std::vector<FieldT>& samples() const { return samples_; }

private:
    std::vector<double> times_;
    std::vector<FieldT> samples_;
};

using ScalarSeries = TimeSeries<Field2D>;
using VectorSeries = TimeSeries<VectorField2D>;

/// ||Delta_j f(t_m)||_{L^p}: row m <-> time t_m, column k <-> block j_min + k.
struct BlockNormTable {
    Eigen::VectorXd times;
    int j_min = 0;
    Eigen::MatrixXd norms;

    void append(double t, const Eigen::VectorXd& row);
};

template <typename FieldT>
BlockNormTable block_norm_table(const TimeSeries<FieldT>& ts, double p) {
    BlockNormTable table;
    for (std::size_t m = 0; m < ts.size(); ++m) {
        table.j_min = ts[m].grid().j_min();
        table.append(ts.times()[m], block_lp_norms(ts[m], p));
    }
    return table;
}

/// (int_0^T |g|^q dt)^{1/q} by the trapezoid rule on the sample times; max for q = inf.
double time_lebesgue_norm(const Eigen::VectorXd& times, const Eigen::VectorXd& values, double q);

/// || (2^{js} ||Delta_j f||_{L^q_T L^p})_j ||_{ell^r}.
double chemin_lerner_norm(const BlockNormTable& table, double s, double r, double q);
/// || ||f(t)||_{B^s_{p,r}} ||_{L^q_T}, the ordinary time-Lebesgue norm.
double time_besov_norm(const BlockNormTable& table, double s, double r, double q);

template <typename FieldT>
double chemin_lerner_norm(const TimeSeries<FieldT>& ts, const BesovParams& bp, double q) {
    bp.validate();
    if (!(q >= 1.0)) throw DomainError("chemin_lerner_norm: q must be >= 1");
    if (ts.empty() || (ts.size() < 2 && !std::isinf(q))) {
        throw DomainError("chemin_lerner_norm: finite q needs at least two time samples");
    }
    return chemin_lerner_norm(block_norm_table(ts, bp.p), bp.s, bp.r, q);
}

/// Lattice quadrature of int phi(16 xi) f_hat(xi) dxi; needs 1/L <= 1/64.
struct WitnessValue {
    std::complex<double> value;
    double modulus = 0.0;
    double phase = 0.0;
};
WitnessValue witness_functional(const Field2D& f);
std::array<WitnessValue, 2> witness_functional(const VectorField2D& u);

/// Smallest torus scale L at which witness_functional resolves its annulus.
constexpr double kWitnessMinPeriodScale = 64.0;

/// Measured constants of the product, composition and bilinear estimates.
double check_product_inequality(const Field2D& f, const Field2D& g, double s, double p);
double check_composition_inequality(const Field2D& h, double s, double p);
double check_bilinear_estimate(const Field2D& f, const Field2D& g, double p2, double q2);

}  // namespace swlab
