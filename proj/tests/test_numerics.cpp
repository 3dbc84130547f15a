#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "focklab/numerics.hpp"

using namespace focklab;

TEST_CASE("gauss_legendre reproduces the classic 5-point rule") {
    const GaussLegendre gl = gauss_legendre(5, -1.0, 1.0);
    // Roots of P_5 and their weights.
    CHECK(gl.nodes[2] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gl.nodes[3] == doctest::Approx(0.5384693101056831).epsilon(1e-13));
    CHECK(gl.nodes[4] == doctest::Approx(0.9061798459386640).epsilon(1e-13));
    CHECK(gl.weights[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-13));
    CHECK(gl.weights[3] == doctest::Approx(0.4786286704993665).epsilon(1e-13));
    CHECK(gl.weights[4] == doctest::Approx(0.2369268850561891).epsilon(1e-13));
}

TEST_CASE("gauss_legendre is exact for polynomials up to degree 2n-1") {
    const GaussLegendre gl = gauss_legendre(6, 0.0, 2.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        acc += gl.weights[i] * std::pow(gl.nodes[i], 11);
    }
    CHECK(acc == doctest::Approx(std::pow(2.0, 12) / 12.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre rejects bad arguments") {
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("pairwise_sum matches long double accumulation") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> v(100001);
    long double ref = 0.0L;
    for (double& x : v) {
        x = unif(rng);
        ref += x;
    }
    CHECK(pairwise_sum(std::span<const double>(v)) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("bessel_i0_scaled agrees with the standard library on the series range") {
    for (double z : {0.0, 0.3, 1.0, 4.5, 12.0, 25.0, 29.9}) {
        const double ref = std::exp(-z) * std::cyl_bessel_i(0.0, z);
        CHECK(bessel_i0_scaled(z) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("bessel_i0_scaled: both branches agree with the reference at the cutoff") {
    for (double z : {29.9999999, 30.0000001}) {
        const double ref = std::exp(-z) * std::cyl_bessel_i(0.0, z);
        CHECK(bessel_i0_scaled(z) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("bessel_i0_scaled follows the large-argument law 1/sqrt(2 pi z)") {
    for (double z : {1e2, 1e3, 1e4, 1e6}) {
        const double scaled = bessel_i0_scaled(z) * std::sqrt(2.0 * kPi * z);
        // First two corrections of the asymptotic series.
        const double want = 1.0 + 1.0 / (8.0 * z) + 9.0 / (128.0 * z * z);
        CHECK(scaled == doctest::Approx(want).epsilon(1e-7));
    }
}

TEST_CASE("bessel_i0_scaled rejects negative arguments") {
    CHECK_THROWS_AS(bessel_i0_scaled(-1.0), std::invalid_argument);
}

TEST_CASE("log_gamma matches factorials") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), std::invalid_argument);
}
