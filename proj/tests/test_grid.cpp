#include "support.hpp"

#include "swlab/errors.hpp"
#include "swlab/field.hpp"

#include <doctest.h>

#include <array>

using namespace swlab;
using swlab::testing::plane_wave;
using swlab::testing::random_complex_field;
using swlab::testing::random_real_field;
using swlab::testing::rel_l2;

TEST_CASE("grid spec validation and band") {
    CHECK_THROWS_AS(GridSpec(0.0, 64), ConfigError);
    CHECK_THROWS_AS(GridSpec(1.0, 63), ConfigError);
    CHECK_THROWS_AS(GridSpec(1.0, 2), ConfigError);

    const GridSpec g(16.0, 512);
    CHECK(g.frequency_step() == doctest::Approx(1.0 / 16));
    CHECK(g.nyquist() == doctest::Approx(16.0));
    CHECK(g.dealias_cutoff() <= g.nyquist());
    // 2^{j_min} 3/4 >= 1/16 and 2^{j_max} 8/3 <= 16
    CHECK(g.j_min() == -3);
    CHECK(g.j_max() == 2);
    CHECK(std::ldexp(0.75, g.j_min()) >= g.frequency_step());
    CHECK(std::ldexp(0.75, g.j_min() - 1) < g.frequency_step());
    CHECK(std::ldexp(8.0 / 3.0, g.j_max()) <= g.nyquist());
    CHECK(std::ldexp(8.0 / 3.0, g.j_max() + 1) > g.nyquist());
}

TEST_CASE("fast sizes are even and 7-smooth") {
    CHECK(GridSpec::next_fast_size(3120) == 3136);
    CHECK(GridSpec::next_fast_size(397) == 400);
    CHECK(GridSpec::next_fast_size(1) == 4);
    const GridSpec g = GridSpec::resolving(4.0, 33.0);
    CHECK(g.dealias_cutoff() >= 33.0);
    CHECK(g.points() == 400);
}

TEST_CASE("transform pair") {
    const GridSpec g(1.0, 32);
    SUBCASE("constant concentrates at zero frequency") {
        const Field2D one = sample_physical(g, [](double, double) { return 1.0; });
        const Field2D s = to_spectral(one);
        CHECK(std::abs(s.values()(0, 0) - 32.0) < 1e-12);
        CHECK(s.values().abs().sum() - 32.0 < 1e-10);
    }
    SUBCASE("plane wave hits a single coefficient") {
        const Field2D s = to_spectral(plane_wave(g, 3, -5));
        const int i = 3, j = 32 - 5;
        CHECK(std::abs(s.values()(i, j) - 32.0) < 1e-11);
        CHECK(s.values().abs().sum() - 32.0 < 1e-9);
        CHECK(g.wavenumbers()(i) == 3.0);
        CHECK(g.wavenumbers()(j) == -5.0);
    }
    SUBCASE("round trip and Parseval on random fields") {
        std::mt19937_64 rng(11);
        for (int k = 0; k < 5; ++k) {
            const Field2D f = random_complex_field(g, rng);
            const Field2D back = to_physical(to_spectral(f));
            CHECK((back.values() - f.values()).abs().maxCoeff() / f.values().abs().maxCoeff() <= 1e-12);
            const double phys = f.values().abs2().sum();
            CHECK(std::abs(spectral_energy(to_spectral(f)) - phys) / phys <= 1e-12);
        }
    }
    SUBCASE("representation tags are enforced") {
        const Field2D p(g, Representation::physical);
        CHECK_THROWS_AS(to_physical(p), DomainError);
        CHECK_THROWS_AS(to_spectral(to_spectral(p)), DomainError);
        CHECK_THROWS_AS(dealias(p), DomainError);
        CHECK_THROWS_AS(Field2D(g, Representation::physical, ComplexArray::Zero(4, 4)), DomainError);
    }
}

TEST_CASE("derivative") {
    const GridSpec g(1.0, 32);
    const Field2D w = plane_wave(g, 3, 4);
    const Field2D d1 = derivative(w, 1);
    CHECK(rel_l2(d1, std::complex<double>(0.0, 3.0) * w) < 1e-13);
    const Field2D c = sample_physical(g, [](double, double) { return 2.0; });
    CHECK(lp_norm(derivative(c, 2), INFINITY) < 1e-13);
    CHECK_THROWS_AS(derivative(w, 3), DomainError);

    // Fourth-order centred differences of sin(2^3 x1) on a fine grid.
    const GridSpec fine(1.0, 1024);
    const Field2D s = sample_physical(fine, [](double x1, double) { return std::sin(8.0 * x1); });
    const ComplexArray spec = to_physical(derivative(s, 1)).values();
    const double h = fine.spacing();
    double worst = 0.0, peak = 0.0;
    for (int i = 0; i < fine.points(); ++i) {
        const double x = fine.coordinate(i);
        const double fd = (-std::sin(8.0 * (x + 2 * h)) + 8.0 * std::sin(8.0 * (x + h)) - 8.0 * std::sin(8.0 * (x - h)) +
                           std::sin(8.0 * (x - 2 * h))) /
                          (12.0 * h);
        worst = std::max(worst, std::abs(spec(i, 0) - fd));
        peak = std::max(peak, std::abs(fd));
    }
    CHECK(worst / peak <= 1e-6);
}

TEST_CASE("heat propagation") {
    const GridSpec g(1.0, 32);
    const Field2D w = plane_wave(g, 3, 4);
    const Field2D e = heat_propagate(w, 0.1);
    CHECK(std::abs(to_spectral(w).values()(3, 4) * std::exp(-2.5) - e.values()(3, 4)) < 1e-13);
    CHECK(std::exp(-2.5) == doctest::Approx(0.082085).epsilon(1e-5));
    CHECK(rel_l2(heat_propagate(w, 0.0), w) == 0.0);
    CHECK_THROWS_AS(heat_propagate(w, -1e-9), DomainError);

    std::mt19937_64 rng(5);
    const Field2D f = random_real_field(g, rng, 0.0, 10.0);
    CHECK(rel_l2(heat_propagate(heat_propagate(f, 0.03), 0.05), heat_propagate(f, 0.08)) <= 1e-12);
    CHECK(imaginary_residue(heat_propagate(f, 0.07)) <= 1e-12);
    CHECK(hermitian_defect(heat_propagate(f, 0.07)) <= 1e-12);
    CHECK(rel_l2(derivative(heat_propagate(f, 0.02), 1), heat_propagate(derivative(f, 1), 0.02)) <= 1e-12);
}

TEST_CASE("lp norms") {
    const GridSpec g(2.0, 32);
    const double area = std::pow(2.0 * M_PI * 2.0, 2);
    const Field2D zero(g, Representation::physical);
    CHECK(lp_norm(zero, 3.0) == 0.0);
    const Field2D one = sample_physical(g, [](double, double) { return 1.0; });
    for (double p : {1.0, 2.0, 3.5, 8.0}) {
        CHECK(lp_norm(one, p) == doctest::Approx(std::pow(area, 1.0 / p)).epsilon(1e-13));
        CHECK(lp_norm(plane_wave(g, 1, 2), p) == doctest::Approx(std::pow(area, 1.0 / p)).epsilon(1e-13));
    }
    CHECK(lp_norm(one, INFINITY) == 1.0);
    CHECK_THROWS_AS(lp_norm(one, 0.5), DomainError);
    const VectorField2D u{one, plane_wave(g, 1, 1)};
    CHECK(lp_norm(u, INFINITY) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("dealiasing") {
    const GridSpec g(1.0, 48);  // cutoff 16
    const Field2D low = to_spectral(plane_wave(g, 15, -15));
    CHECK(rel_l2(dealias(low), low) < 1e-13);
    const Field2D nyq = to_spectral(plane_wave(g, 24, 0));
    CHECK(spectral_energy(dealias(nyq)) < 1e-24 * spectral_energy(nyq));

    // Modes at the cutoff: the dealiased product must equal the exact convolution
    // restricted to the kept modes, computed on a doubled grid where nothing aliases.
    // (16, 3) x (16, -2) lands on 32, whose alias -16 sits exactly on the cutoff.
    const GridSpec big(1.0, 96);
    for (const auto& [a1, a2, b1, b2] : {std::array<int, 4>{16, 3, 16, -2}, std::array<int, 4>{15, -9, -7, 8}}) {
        const Field2D prod = product(plane_wave(g, a1, a2), plane_wave(g, b1, b2));
        const Field2D exact = to_spectral(Field2D(
            big, Representation::physical, plane_wave(big, a1, a2).values() * plane_wave(big, b1, b2).values()));
        double worst = 0.0;
        for (int j = 0; j < 48; ++j) {
            for (int i = 0; i < 48; ++i) {
                const int ki = static_cast<int>(g.wavenumbers()(i)), kj = static_cast<int>(g.wavenumbers()(j));
                std::complex<double> ref = exact.values()((ki + 96) % 96, (kj + 96) % 96) * (48.0 / 96.0);
                if (std::abs(ki) >= 16 || std::abs(kj) >= 16) ref = 0.0;
                worst = std::max(worst, std::abs(prod.values()(i, j) - ref));
            }
        }
        CHECK(worst <= 1e-12 * 48.0);
    }
    const Field2D prod = product(plane_wave(g, 15, -9), plane_wave(g, -7, 8));
    CHECK(std::abs(prod.values()(8, 47) - 48.0) < 1e-10);
    CHECK(is_dealiased(prod));
    CHECK(!is_dealiased(nyq));
}
