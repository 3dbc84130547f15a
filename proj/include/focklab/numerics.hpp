#pragma once

#include <complex>
#include <span>
#include <vector>

namespace focklab {

using Cpx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Fixed-order cascade summation. The association order depends only on the
// length, so results are bit-reproducible run to run.
double pairwise_sum(std::span<const double> v);
Cpx pairwise_sum(std::span<const Cpx> v);

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
GaussLegendre gauss_legendre(int n, double a, double b);

// e^{-z} I0(z) for z >= 0, where I0 is the modified Bessel function of
// order zero. Power series up to z = 30, asymptotic series beyond; the
// scaled product stays O(1) for arbitrarily large z.
double bessel_i0_scaled(double z);

// log Gamma(x) for x > 0.
double log_gamma(double x);

} // namespace focklab
