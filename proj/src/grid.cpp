#include "swlab/grid.hpp"

#include "swlab/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace swlab {

namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool is_seven_smooth(int n) {
    for (int f : {2, 3, 5, 7}) {
        while (n % f == 0) n /= f;
    }
    return n == 1;
}

}  // namespace

struct FftBackend::Plans {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

FftBackend::FftBackend(int n) : n_(n), plans_(std::make_unique<Plans>()) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    auto* in = fftw_alloc_complex(count);
    auto* out = fftw_alloc_complex(count);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->forward = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags);
    plans_->inverse = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (plans_->forward == nullptr || plans_->inverse == nullptr) {
        throw NumericalError("FFTW planning failed for N = " + std::to_string(n));
    }
}

FftBackend::~FftBackend() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plans_->forward);
    fftw_destroy_plan(plans_->inverse);
}

ComplexArray FftBackend::forward(const ComplexArray& physical) const {
    ComplexArray in = physical;  // FFTW may not preserve its input
    ComplexArray out(n_, n_);
    fftw_execute_dft(plans_->forward, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    out /= static_cast<double>(n_);
    return out;
}

ComplexArray FftBackend::inverse(const ComplexArray& spectral) const {
    ComplexArray in = spectral;
    ComplexArray out(n_, n_);
    fftw_execute_dft(plans_->inverse, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    out /= static_cast<double>(n_);
    return out;
}

struct GridSpec::Cache {
    std::once_flag fft_once, sq_once, mod_once, mask_once;
    std::unique_ptr<FftBackend> fft;
    Eigen::ArrayXd wavenumbers;
    Eigen::ArrayXd derivative_wavenumbers;
    RealArray frequency_squared;
    RealArray frequency_modulus;
    RealArray dealias_mask;
};

GridSpec::GridSpec(double period_scale, int points_per_axis)
    : period_scale_(period_scale), points_(points_per_axis) {
    if (!(period_scale > 0.0) || !std::isfinite(period_scale)) {
        throw ConfigError("grid: period scale L must be positive, got " + std::to_string(period_scale));
    }
    if (points_per_axis < 4 || points_per_axis % 2 != 0) {
        throw ConfigError("grid: N must be an even integer >= 4, got " + std::to_string(points_per_axis));
    }
    // 2^j * 3/4 >= 1/L
    j_min_ = static_cast<int>(std::ceil(std::log2(4.0 / (3.0 * period_scale)))) - 1;
    while (std::ldexp(0.75, j_min_) < 1.0 / period_scale) ++j_min_;
    // 2^j * 8/3 <= N/(2L)
    j_max_ = static_cast<int>(std::floor(std::log2(3.0 * points_per_axis / (16.0 * period_scale)))) + 1;
    while (std::ldexp(8.0 / 3.0, j_max_) > nyquist()) --j_max_;
    if (j_min_ > j_max_) {
        throw ConfigError("grid: no resolved dyadic band for L = " + std::to_string(period_scale) +
                          ", N = " + std::to_string(points_per_axis));
    }

    cache_ = std::make_shared<Cache>();
    const int n = points_;
    cache_->wavenumbers.resize(n);
    for (int i = 0; i < n; ++i) {
        const int k = i < n / 2 ? i : i - n;
        cache_->wavenumbers(i) = k / period_scale_;
    }
    cache_->derivative_wavenumbers = cache_->wavenumbers;
    cache_->derivative_wavenumbers(n / 2) = 0.0;
}

double GridSpec::side() const { return 2.0 * std::numbers::pi * period_scale_; }
double GridSpec::spacing() const { return side() / points_; }
double GridSpec::cell_area() const { return spacing() * spacing(); }
double GridSpec::nyquist() const { return points_ / (2.0 * period_scale_); }
double GridSpec::dealias_cutoff() const { return nyquist() * 2.0 / 3.0; }

std::pair<double, double> GridSpec::partition_range() const {
    return {std::ldexp(4.0 / 3.0, j_min_), std::ldexp(1.5, j_max_)};
}

const Eigen::ArrayXd& GridSpec::wavenumbers() const { return cache_->wavenumbers; }
const Eigen::ArrayXd& GridSpec::derivative_wavenumbers() const { return cache_->derivative_wavenumbers; }

RealArray GridSpec::xi(int axis) const {
    const auto& w = cache_->wavenumbers;
    if (axis == 1) return w.replicate(1, points_);
    if (axis == 2) return w.transpose().replicate(points_, 1);
    throw DomainError("grid: axis must be 1 or 2");
}

const RealArray& GridSpec::frequency_squared() const {
    std::call_once(cache_->sq_once, [this] {
        const auto& w = cache_->wavenumbers;
        cache_->frequency_squared =
            w.square().replicate(1, points_) + w.square().transpose().replicate(points_, 1);
    });
    return cache_->frequency_squared;
}

const RealArray& GridSpec::frequency_modulus() const {
    std::call_once(cache_->mod_once, [this] { cache_->frequency_modulus = frequency_squared().sqrt(); });
    return cache_->frequency_modulus;
}

const RealArray& GridSpec::dealias_mask() const {
    std::call_once(cache_->mask_once, [this] {
        // Strict: a product of two modes at exactly N/3 would alias back onto N/3.
        const double cut = dealias_cutoff() * (1.0 - 1e-12);
        const Eigen::ArrayXd keep = (cache_->wavenumbers.abs() < cut).cast<double>();
        cache_->dealias_mask = keep.matrix() * keep.matrix().transpose();
    });
    return cache_->dealias_mask;
}

const FftBackend& GridSpec::fft() const {
    std::call_once(cache_->fft_once, [this] { cache_->fft = std::make_unique<FftBackend>(points_); });
    return *cache_->fft;
}

int GridSpec::next_fast_size(int min_points) {
    int n = std::max(4, min_points);
    if (n % 2 != 0) ++n;
    while (!is_seven_smooth(n)) n += 2;
    return n;
}

GridSpec GridSpec::resolving(double period_scale, double max_axis_frequency) {
    // dealias cutoff N / (3 L) > max_axis_frequency
    const int n = static_cast<int>(std::floor(3.0 * period_scale * max_axis_frequency + 1e-9)) + 1;
    return GridSpec(period_scale, next_fast_size(n));
}

}  // namespace swlab
