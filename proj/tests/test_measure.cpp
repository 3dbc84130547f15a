#include "doctest.h"

#include <cmath>
#include <random>

#include "focklab/measure.hpp"

using namespace focklab;

namespace {

GridFunction constant_one(const QuadratureRule& rule) {
    return sample(rule, [](std::span<const Cpx>) { return Cpx(1.0, 0.0); });
}

} // namespace

TEST_CASE("build_rule normalizes the measure") {
    const QuadratureRule r1 = build_rule(1, 1.0, 1e-10);
    const GaussianMeasure mu1 = make_measure(1, 1.0);
    CHECK(std::abs(integrate(constant_one(r1), mu1, r1).real() - 1.0) <= 1e-10);

    const QuadratureRule r2 = build_rule(1, 2.0, 1e-10);
    CHECK(r2.radius() < r1.radius()); // faster Gaussian decay shrinks the domain
    const GaussianMeasure mu2 = make_measure(1, 2.0);
    CHECK(std::abs(integrate(constant_one(r2), mu2, r2).real() - 1.0) <= 1e-10);
}

TEST_CASE("build_rule in dimension 2 reproduces a first moment") {
    RuleOptions opts;
    opts.radial_nodes = 64;
    opts.angular_nodes = 16;
    const QuadratureRule rule = build_rule(2, 1.0, 1e-8, opts);
    const GaussianMeasure mu = make_measure(2, 1.0);
    const GridFunction f =
        sample(rule, [](std::span<const Cpx> z) { return Cpx(std::norm(z[0]), 0.0); });
    // |z^{(1,0)}|^2 integrates to m!/t^|m| = 1.
    CHECK(integrate(f, mu, rule).real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("build_rule rejects unsupported parameters") {
    CHECK_THROWS_AS(build_rule(3, 1.0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(1, -1.0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(1, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("integrate examples") {
    const QuadratureRule rule = build_rule(1, 1.0, 1e-10);
    const GaussianMeasure mu = make_measure(1, 1.0);

    SUBCASE("probability measure") {
        CHECK(integrate(constant_one(rule), mu, rule).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("second moment |z|^2 at t=1") {
        const GridFunction f =
            sample(rule, [](std::span<const Cpx> z) { return Cpx(std::norm(z[0]), 0.0); });
        CHECK(integrate(f, mu, rule).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("|e^{2<z,a>}| with |a|=1 integrates to e") {
        RuleOptions opts;
        opts.growth = 2.0;
        const QuadratureRule g = build_rule(1, 1.0, 1e-10, opts);
        const std::vector<Cpx> a{Cpx(0.6, 0.8)};
        const GridFunction f = sample(g, [&](std::span<const Cpx> z) {
            return Cpx(std::exp(2.0 * (z[0] * std::conj(a[0])).real()), 0.0);
        });
        CHECK(integrate(f, mu, g).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
    }
}

TEST_CASE("integrate rejects mismatched inputs") {
    const QuadratureRule rule = build_rule(1, 1.0, 1e-8);
    const GridFunction f = constant_one(rule);
    CHECK_THROWS_AS(integrate(f, make_measure(1, 2.0), rule), std::invalid_argument);
    CHECK_THROWS_AS(integrate(f, make_measure(2, 1.0), rule), std::invalid_argument);
    GridFunction short_f(1, std::vector<Cpx>(3, Cpx(1.0, 0.0)));
    CHECK_THROWS_AS(integrate(short_f, make_measure(1, 1.0), rule), std::invalid_argument);
}

TEST_CASE("gaussian_monomial_moment closed forms") {
    CHECK(gaussian_monomial_moment(MultiIndex({0, 0, 0}), 2.7, 1.9) == doctest::Approx(1.0));
    CHECK(gaussian_monomial_moment(MultiIndex({2}), 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gaussian_monomial_moment(MultiIndex({1}), 4.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(gaussian_monomial_moment(MultiIndex({1}), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_monomial_moment(MultiIndex({1}), 2.0, -1.0), std::invalid_argument);
}

TEST_CASE("gaussian_monomial_moment scale covariance") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.1, 3.0);
    std::uniform_int_distribution<int> order(0, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const MultiIndex m({order(rng), order(rng)});
        const double p = unif(rng), t = unif(rng), c = unif(rng);
        const double lhs = gaussian_monomial_moment(m, p, c * t);
        const double rhs =
            gaussian_monomial_moment(m, p, t) / std::pow(c, p * m.order() / 2.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("quadrature matches the closed-form moment up to order 6") {
    for (double t : {0.5, 1.0, 2.0}) {
        const QuadratureRule rule = build_rule(1, t, 1e-10);
        const GaussianMeasure mu = make_measure(1, t);
        for (int m = 0; m <= 6; ++m) {
            for (double p : {1.0, 2.0, 3.0, 4.0}) {
                const GridFunction f = sample(rule, [&](std::span<const Cpx> z) {
                    return Cpx(std::pow(std::abs(z[0]), p * m), 0.0);
                });
                const double closed = gaussian_monomial_moment(MultiIndex({m}), p, t);
                const double quad = integrate(f, mu, rule).real();
                CHECK(std::abs(quad - closed) / closed <= 10.0 * rule.tolerance());
            }
        }
    }
}

TEST_CASE("lp_norm basics") {
    const QuadratureRule rule = build_rule(1, 1.5, 1e-10);
    SUBCASE("constant function has unit norm") {
        CHECK(lp_norm(constant_one(rule), 3.0, 1.5, rule) == doctest::Approx(1.0).epsilon(1e-11));
    }
    SUBCASE("monomials match the closed-form moment") {
        for (int k : {1, 3}) {
            for (double p : {1.0, 2.0, 4.0}) {
                const GridFunction f = sample(rule, [&](std::span<const Cpx> z) {
                    Cpx acc = 1.0;
                    for (int i = 0; i < k; ++i) acc *= z[0];
                    return acc;
                });
                const double want =
                    std::pow(gaussian_monomial_moment(MultiIndex({k}), p, 1.5), 1.0 / p);
                CHECK(lp_norm(f, p, 1.5, rule) == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
    SUBCASE("degenerate family member is the constant 1") {
        // f_{x,k} with x = 0, k = 0.
        CHECK(lp_norm(constant_one(rule), 2.0, 1.5, rule) == doctest::Approx(1.0).epsilon(1e-11));
    }
    SUBCASE("absolute homogeneity") {
        GridFunction f = sample(rule, [](std::span<const Cpx> z) {
            return z[0] * std::exp(-0.3 * std::norm(z[0]));
        });
        const double base = lp_norm(f, 2.5, 1.5, rule);
        for (Cpx& v : f.values()) v *= Cpx(-1.7, 2.2);
        CHECK(lp_norm(f, 2.5, 1.5, rule) ==
              doctest::Approx(std::abs(Cpx(-1.7, 2.2)) * base).epsilon(1e-12));
    }
    SUBCASE("scale mismatch is rejected") {
        CHECK_THROWS_AS(lp_norm(constant_one(rule), 2.0, 1.0, rule), std::invalid_argument);
        CHECK_THROWS_AS(lp_norm(constant_one(rule), 0.5, 1.5, rule), std::invalid_argument);
    }
}

TEST_CASE("MultiIndex derived quantities") {
    const MultiIndex m({2, 0, 3});
    CHECK(m.order() == 5);
    CHECK(m.log_factorial() == doctest::Approx(std::log(2.0 * 6.0)).epsilon(1e-14));
    CHECK_THROWS_AS(MultiIndex({-1}), std::invalid_argument);
}
