#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mpemba/model.hpp"
#include "oracles.hpp"

using namespace mpemba;
using std::complex;

TEST_CASE("superoperator_matrix entries") {
    SUBCASE("gamma' = 0 leaves only the coherent +-i omega/2 couplings") {
        const Eigen::Matrix4cd L = superoperator_matrix({1.0, 0.0, 0.7});
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const complex<double> v = L(i, j);
                CHECK(std::abs(v.real()) < 1e-15);
                if (std::abs(v) > 0.0) CHECK(std::abs(std::abs(v.imag()) - 0.5) < 1e-15);
            }
        }
    }
    SUBCASE("gamma' = 1, alpha = 1 diagonal") {
        const Eigen::Matrix4cd L = superoperator_matrix({1.0, 1.0, 1.0});
        CHECK(L(0, 0).real() == doctest::Approx(-2.0));
        CHECK(L(1, 1).real() == doctest::Approx(-1.0));
        CHECK(L(2, 2).real() == doctest::Approx(-1.0));
        CHECK(L(3, 3).real() == doctest::Approx(0.0));
    }
    SUBCASE("identity/2 is not stationary under decay") {
        const Eigen::Matrix4cd L = superoperator_matrix({1.0, 1.0, 1.0});
        const Eigen::Vector4cd half_id(0.5, 0.0, 0.0, 0.5);
        CHECK((L * half_id).norm() > 0.5);
    }
    SUBCASE("trace components cancel column-wise") {
        const Eigen::Matrix4cd L = superoperator_matrix({1.0, 3.7, 0.41});
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(L(0, j) + L(3, j)) < 1e-15);
        }
    }
}

TEST_CASE("trace preservation on random states") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const ModelParams p{1.0, 20.0 * uni(rng), uni(rng)};
        const Eigen::Matrix4cd L = superoperator_matrix(p);
        const DensityMatrix rho = bloch_to_density(oracles::random_bloch(rng));
        const Eigen::Vector4cd v(rho.rho11(), rho.rho21(), rho.rho12(), rho.rho22());
        const Eigen::Vector4cd dv = L * v;
        CHECK(std::abs(dv(0) + dv(3)) < 1e-12);
    }
}

TEST_CASE("bloch_drift matches the superoperator after the basis change") {
    SUBCASE("gamma' = 1, alpha = 1") {
        const BlochDrift d = bloch_drift({1.0, 1.0, 1.0});
        CHECK(d.A(0, 0) == doctest::Approx(-1.0));
        CHECK(d.A(0, 1) == doctest::Approx(-1.0));
        CHECK(d.A(1, 0) == doctest::Approx(1.0));
        CHECK(d.A(1, 1) == doctest::Approx(-2.0));
        CHECK(d.b(0) == doctest::Approx(0.0));
        CHECK(d.b(1) == doctest::Approx(-2.0));
        CHECK(d.lambda_x == doctest::Approx(-1.0));
    }
    SUBCASE("gamma' = 0 is a pure rotation") {
        const BlochDrift d = bloch_drift({1.0, 0.0, 1.0});
        CHECK(d.A(0, 0) == doctest::Approx(0.0));
        CHECK(d.A(0, 1) == doctest::Approx(-1.0));
        CHECK(d.A(1, 0) == doctest::Approx(1.0));
        CHECK(d.A(1, 1) == doctest::Approx(0.0));
        CHECK(d.b.norm() == doctest::Approx(0.0));
    }
    SUBCASE("consistency on random parameters and states") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int k = 0; k < 300; ++k) {
            const ModelParams p{1.0, 30.0 * uni(rng), uni(rng)};
            const BlochState r = oracles::random_bloch(rng);
            const DensityMatrix rho = bloch_to_density(r);
            const Eigen::Matrix4cd L = superoperator_matrix(p);
            const Eigen::Vector4cd dv = L * Eigen::Vector4cd(rho.rho11(), rho.rho21(), rho.rho12(), rho.rho22());
            const double dx = (dv(2) + dv(1)).real();
            const double dy = (complex<double>(0, 1) * (dv(2) - dv(1))).real();
            const double dz = (dv(0) - dv(3)).real();
            const BlochDrift d = bloch_drift(p);
            const Eigen::Vector2d yz = d.A * Eigen::Vector2d(r.y, r.z) + d.b;
            CHECK(std::abs(dx - d.lambda_x * r.x) < 1e-12);
            CHECK(std::abs(dy - yz(0)) < 1e-12);
            CHECK(std::abs(dz - yz(1)) < 1e-12);
        }
    }
}

TEST_CASE("steady_state closed form") {
    SUBCASE("gamma' = 1, alpha = 1: (0, 2/3, -2/3), p = 2 sqrt(2)/3, theta = -pi/4") {
        const SteadyState ss = steady_state({1.0, 1.0, 1.0});
        CHECK_FALSE(ss.degenerate);
        CHECK(ss.bloch.x == doctest::Approx(0.0));
        CHECK(ss.bloch.y == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(ss.bloch.z == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
        CHECK(ss.p == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-14));
        CHECK(ss.theta == doctest::Approx(-M_PI / 4.0).epsilon(1e-14));
        // Independent check: linear solve of A r* = -b.
        const BlochDrift d = bloch_drift({1.0, 1.0, 1.0});
        const Eigen::Vector2d sol = oracles::fixed_point(d.A, d.b);
        CHECK(std::abs(sol(0) - ss.bloch.y) < 1e-12);
        CHECK(std::abs(sol(1) - ss.bloch.z) < 1e-12);
    }
    SUBCASE("gamma' -> infinity approaches the south pole") {
        const SteadyState ss = steady_state({1.0, 1e8, 1.0});
        CHECK(ss.bloch.z == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(std::abs(ss.bloch.y) < 1e-7);
        CHECK(ss.p == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("gamma' = 0 and alpha = 0 return flagged centers") {
        const SteadyState a = steady_state({1.0, 0.0, 0.7});
        CHECK(a.degenerate);
        CHECK(a.bloch.norm() == doctest::Approx(0.0));
        CHECK(a.p == doctest::Approx(0.0));
        const SteadyState b = steady_state({1.0, 5.0, 0.0});
        CHECK(b.degenerate);
        CHECK(b.bloch.norm() == doctest::Approx(0.0));
    }
    SUBCASE("p and theta reproduce y, z") {
        for (double g : {0.1, 0.5, 2.0, 30.0}) {
            for (double a : {0.2, 0.6, 1.0}) {
                const SteadyState ss = steady_state({1.0, g, a});
                CHECK(std::abs(ss.p * std::cos(ss.theta) - ss.bloch.y) < 1e-12);
                CHECK(std::abs(ss.p * std::sin(ss.theta) - ss.bloch.z) < 1e-12);
            }
        }
    }
    SUBCASE("residual |A r* + b| < 1e-12 over a (gamma', alpha) grid") {
        for (double g : oracles::logspace(1e-3, 1e3, 40)) {
            for (double a : oracles::linspace(0.05, 1.0, 20)) {
                const ModelParams p{1.0, g, a};
                CHECK(steady_state_residual(p, steady_state(p)) < 1e-12);
            }
        }
    }
    SUBCASE("semi-minor axis: max |y*| over gamma' equals sqrt(alpha/2)") {
        for (double a : {0.47, 0.94, 1.0}) {
            double best = 0.0;
            for (double g : oracles::logspace(1e-3, 1e3, 20000)) {
                best = std::max(best, std::abs(steady_state({1.0, g, a}).bloch.y));
            }
            CHECK(best == doctest::Approx(std::sqrt(a / 2.0)).epsilon(1e-6));
        }
    }
}

TEST_CASE("locus_sample") {
    SUBCASE("z decreases monotonically with gamma'") {
        const double grid[] = {0.1, 1.0, 10.0};
        const auto locus = locus_sample(1.0, grid);
        REQUIRE(locus.size() == 3);
        CHECK(locus[0].bloch.z > locus[1].bloch.z);
        CHECK(locus[1].bloch.z > locus[2].bloch.z);
    }
    SUBCASE("alpha = 1/2 locus satisfies (2y)^2 + (2z+1)^2 = 1") {
        const auto grid = oracles::logspace(0.01, 100.0, 50);
        for (const SteadyState& ss : locus_sample(0.5, grid)) {
            const double e = 4.0 * ss.bloch.y * ss.bloch.y +
                             (2.0 * ss.bloch.z + 1.0) * (2.0 * ss.bloch.z + 1.0);
            CHECK(std::abs(e - 1.0) < 1e-10);
        }
    }
    SUBCASE("ellipse identity holds for alpha in (0, 1], gamma' up to 1e3") {
        for (double a : oracles::linspace(0.05, 1.0, 20)) {
            for (const SteadyState& ss : locus_sample(a, oracles::logspace(1e-3, 1e3, 60))) {
                const double e1 = std::sqrt(2.0 / a) * ss.bloch.y;
                const double e2 = 2.0 * ss.bloch.z + 1.0;
                CHECK(std::abs(e1 * e1 + e2 * e2 - 1.0) < 1e-10);
            }
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(ModelParams{0.0, 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModelParams{1.0, -1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModelParams{1.0, 1.0, 1.5}), std::invalid_argument);
    CHECK_NOTHROW(validate(ModelParams{2.0, 0.0, 0.0}));
}
