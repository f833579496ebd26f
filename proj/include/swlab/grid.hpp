#pragma once

#include <Eigen/Core>

#include <memory>
#include <utility>

namespace swlab {

using ComplexArray = Eigen::ArrayXXcd;
using RealArray = Eigen::ArrayXXd;

/// Unitary 2D DFT pair on an N x N complex array. Thread-safe to execute.
class FftBackend {
public:
    explicit FftBackend(int n);
    ~FftBackend();
    FftBackend(const FftBackend&) = delete;
    FftBackend& operator=(const FftBackend&) = delete;

    /// c_k = N^{-1} sum_m f_m exp(-2 pi i k.m / N)
    ComplexArray forward(const ComplexArray& physical) const;
    /// f_m = N^{-1} sum_k c_k exp(+2 pi i k.m / N)
    ComplexArray inverse(const ComplexArray& spectral) const;

private:
    struct Plans;
    int n_;
    std::unique_ptr<Plans> plans_;
};

/// Torus [0, 2 pi L)^2 sampled on N x N points; frequency lattice (1/L) Z^2.
///
/// Array index (i, j) holds x = (2 pi L i / N, 2 pi L j / N) in physical space
/// and xi = (k(i) / L, k(j) / L) in spectral space, k(i) = i for i < N/2 and
/// i - N otherwise. Copies share the FFT plans and cached symbol arrays.
class GridSpec {
public:
    GridSpec(double period_scale, int points_per_axis);

    double period_scale() const { return period_scale_; }
    int points() const { return points_; }
    double side() const;
    double spacing() const;
    double cell_area() const;
    double frequency_step() const { return 1.0 / period_scale_; }
    /// Largest representable |xi_axis|.
    double nyquist() const;
    /// 2/3 of the Nyquist frequency; modes at or beyond it are removed by dealias().
    double dealias_cutoff() const;

    /// Resolved dyadic band: 2^{j_min} 3/4 >= 1/L and 2^{j_max} 8/3 <= N/(2L).
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    int band_size() const { return j_max_ - j_min_ + 1; }
    /// |xi| range on which the band's blocks sum to exactly one.
    std::pair<double, double> partition_range() const;

    /// Per-axis frequency of each index (length N).
    const Eigen::ArrayXd& wavenumbers() const;
    /// Same as wavenumbers() with the Nyquist entry zeroed (derivative symbol).
    const Eigen::ArrayXd& derivative_wavenumbers() const;
    /// xi_1 and xi_2 on the full N x N lattice.
    RealArray xi(int axis) const;
    const RealArray& frequency_squared() const;
    const RealArray& frequency_modulus() const;
    /// 1 where both |xi_axis| < dealias_cutoff(), 0 elsewhere.
    const RealArray& dealias_mask() const;

    const FftBackend& fft() const;

    /// Physical coordinate of index i along an axis.
    double coordinate(int index) const { return spacing() * index; }

    bool operator==(const GridSpec& other) const {
        return period_scale_ == other.period_scale_ && points_ == other.points_;
    }
    bool operator!=(const GridSpec& other) const { return !(*this == other); }

    /// Smallest N >= min_points that is even and 7-smooth.
    static int next_fast_size(int min_points);
    /// Minimal grid on torus scale L whose dealias cutoff exceeds max_axis_frequency.
    static GridSpec resolving(double period_scale, double max_axis_frequency);

private:
    struct Cache;
    double period_scale_;
    int points_;
    int j_min_;
    int j_max_;
    std::shared_ptr<Cache> cache_;
};

}  // namespace swlab
