#include "support.hpp"

#include "swlab/errors.hpp"
#include "swlab/littlewood_paley.hpp"

#include <doctest.h>

using namespace swlab;
using swlab::testing::plane_wave;
using swlab::testing::random_real_field;
using swlab::testing::rel_l2;

TEST_CASE("profiles") {
    const BumpProfile phi = BumpProfile::lp_generator();
    const BumpProfile b = BumpProfile::data_bump();
    CHECK(phi.kind() == BumpKind::lp_generator);
    CHECK(phi.support() == std::pair<double, double>{0.75, 8.0 / 3.0});
    CHECK(b.support() == std::pair<double, double>{0.0, 0.5});
    CHECK(b(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(b(0.5) == 0.0);
    CHECK(b(0.7) == 0.0);
    for (double r : {0.0, 0.3, 0.75, 8.0 / 3.0, 3.0, 10.0}) CHECK(phi(r) == 0.0);
    CHECK(smooth_cutoff(0.75) == 1.0);
    CHECK(smooth_cutoff(4.0 / 3.0) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double rho = std::exp2(-6.0 + 14.0 * u(rng));
        double sum = 0.0;
        for (int j = -12; j <= 12; ++j) {
            sum += lp_symbol(rho, j);
            CHECK(lp_symbol(rho, j) >= 0.0);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
        for (int j = -12; j <= 12; ++j) {
            for (int m = j + 2; m <= 12; ++m) CHECK(lp_symbol(rho, j) * lp_symbol(rho, m) == 0.0);
        }
        const Eigen::ArrayXd arr = Eigen::ArrayXd::Constant(1, rho);
        CHECK(phi(arr)(0) == phi(rho));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("dyadic blocks") {
    const GridSpec g(1.0, 128);
    CHECK_THROWS_AS(dyadic_block(plane_wave(g, 1, 0), g.j_min() - 1), DomainError);
    CHECK_THROWS_AS(dyadic_block(plane_wave(g, 1, 0), g.j_max() + 1), DomainError);

    SUBCASE("plane wave at |k| = 2^j splits over blocks j - 1 and j") {
        const int j = 4;
        const Field2D w = plane_wave(g, 16, 0);
        double total = 0.0;
        for (int m = g.j_min(); m <= g.j_max(); ++m) {
            const double weight = std::abs(dyadic_block(w, m).values()(16, 0)) / 128.0;
            if (m != j - 1 && m != j) CHECK(weight == 0.0);
            total += weight;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("blocks reconstruct band-limited fields; distant blocks annihilate") {
        std::mt19937_64 rng(17);
        const auto [lo, hi] = g.partition_range();
        const Field2D f = random_real_field(g, rng, lo, hi);
        Field2D sum(g, Representation::spectral);
        for (const auto& b : dyadic_decomposition(f)) sum += b;
        CHECK(rel_l2(sum, f) <= 1e-10);
        for (int j = g.j_min(); j <= g.j_max(); ++j) {
            for (int k = j + 2; k <= g.j_max(); ++k) {
                CHECK(spectral_energy(dyadic_block(dyadic_block(f, j), k)) == 0.0);
            }
        }
        CHECK(rel_l2(low_freq_cutoff(f, g.j_max() + 1), f) <= 1e-10);
        CHECK_THROWS_AS(low_freq_cutoff(f, g.j_max() + 2), DomainError);
    }
    SUBCASE("low-pass cut of a plane wave matches the cutoff profile") {
        std::mt19937_64 rng(1);
        const Field2D high = random_real_field(g, rng, g.partition_range().first, 20.0);
        CHECK(spectral_energy(low_freq_cutoff(high, g.j_min())) == 0.0);
        for (int j = g.j_min() + 1; j <= g.j_max(); ++j) {
            const Field2D w = plane_wave(g, 1 << std::max(0, j), 0);
            const double k = std::ldexp(1.0, std::max(0, j));
            const double expected = smooth_cutoff(std::ldexp(k, -j)) - smooth_cutoff(std::ldexp(k, -g.j_min()));
            const int idx = static_cast<int>(k);
            const double got = std::abs(low_freq_cutoff(w, j).values()(idx, 0)) / 128.0;
            CHECK(got == doctest::Approx(expected).epsilon(1e-14));
            CHECK(got >= 0.0);
            CHECK(got <= 1.0);
        }
    }
}

TEST_CASE("bony decomposition") {
    const GridSpec g(1.0, 256);
    std::mt19937_64 rng(23);
    const auto [lo, hi] = g.partition_range();
    const double top = std::min(hi, 0.5 * g.dealias_cutoff());
    SUBCASE("zero operand") {
        const Field2D f = random_real_field(g, rng, lo, top);
        const Field2D z(g, Representation::spectral);
        const BonyParts p = bony_parts(f, z);
        CHECK(spectral_energy(p.low_high) == 0.0);
        CHECK(spectral_energy(p.high_low) == 0.0);
        CHECK(spectral_energy(p.remainder) == 0.0);
    }
    SUBCASE("parts sum to the product") {
        for (int k = 0; k < 3; ++k) {
            const Field2D f = random_real_field(g, rng, lo, top);
            const Field2D h = random_real_field(g, rng, lo, top);
            const BonyParts p = bony_parts(f, h);
            CHECK(rel_l2(p.low_high + p.high_low + p.remainder, product(f, h)) <= 1e-10);
        }
    }
    SUBCASE("aliasing inputs are rejected") {
        const Field2D nyq = to_spectral(plane_wave(g, 120, 0));
        CHECK_THROWS_AS(bony_parts(nyq, nyq), DomainError);
    }
}
