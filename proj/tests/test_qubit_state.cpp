#include <doctest.h>

#include <random>

#include "mpemba/qubit_state.hpp"
#include "oracles.hpp"

using namespace mpemba;

TEST_CASE("bloch_to_density: pole, mixed, and hand-expanded states") {
    SUBCASE("north pole is |up><up|") {
        const DensityMatrix rho = bloch_to_density({0.0, 0.0, 1.0});
        CHECK(rho.rho11().real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(rho.rho22()) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(std::abs(rho.rho12()) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("origin is the maximally mixed state") {
        const DensityMatrix rho = bloch_to_density({0.0, 0.0, 0.0});
        CHECK(rho.rho11().real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(rho.rho22().real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(rho.rho12()) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("(0, 2/3, -2/3): expansion of (1 + y sigma_y + z sigma_z)/2") {
        const DensityMatrix rho = bloch_to_density({0.0, 2.0 / 3.0, -2.0 / 3.0});
        CHECK(rho.rho11().real() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
        CHECK(rho.rho12().real() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(rho.rho12().imag() == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
        CHECK(rho.rho22().real() == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    }
    SUBCASE("rejects |r| > 1") {
        CHECK_THROWS_AS(bloch_to_density({0.8, 0.8, 0.8}), std::invalid_argument);
    }
}

TEST_CASE("density_to_bloch: inverse map and validation") {
    SUBCASE("maximally mixed to origin") {
        DensityMatrix rho;
        rho.m << 0.5, 0.0, 0.0, 0.5;
        const BlochState r = density_to_bloch(rho);
        CHECK(r.x == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.y == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.z == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("|up><up| to north pole") {
        DensityMatrix rho;
        rho.m << 1.0, 0.0, 0.0, 0.0;
        CHECK(density_to_bloch(rho).z == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("sigma_x eigenstate to (1, 0, 0)") {
        DensityMatrix rho;
        rho.m << 0.5, 0.5, 0.5, 0.5;
        const BlochState r = density_to_bloch(rho);
        CHECK(r.x == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.y == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.z == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("rejects non-Hermitian input") {
        DensityMatrix rho;
        rho.m << 0.5, 0.2, 0.3, 0.5;
        CHECK_THROWS_AS(density_to_bloch(rho), std::invalid_argument);
    }
    SUBCASE("rejects trace != 1") {
        DensityMatrix rho;
        rho.m << 0.6, 0.0, 0.0, 0.6;
        CHECK_THROWS_AS(density_to_bloch(rho), std::invalid_argument);
    }
    SUBCASE("rejects negative eigenvalue") {
        DensityMatrix rho;
        rho.m << 0.5, 0.7, 0.7, 0.5;
        CHECK_THROWS_AS(density_to_bloch(rho), std::invalid_argument);
    }
}

TEST_CASE("round trip and purity over random states") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 1000; ++k) {
        const BlochState r = oracles::random_bloch(rng);
        const DensityMatrix rho = bloch_to_density(r);
        CHECK(is_valid(rho));
        const BlochState back = density_to_bloch(rho);
        CHECK(std::abs(back.x - r.x) < 1e-14);
        CHECK(std::abs(back.y - r.y) < 1e-14);
        CHECK(std::abs(back.z - r.z) < 1e-14);
        CHECK(std::abs(rho.purity() - 0.5 * (1.0 + r.norm2())) < 1e-12);
    }
}
