#include "focklab/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace focklab {

namespace {

template <typename T>
T pairwise_impl(std::span<const T> v) {
    if (v.size() <= 32) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_impl(v.subspan(0, half)) + pairwise_impl(v.subspan(half));
}

} // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_impl(v); }
Cpx pairwise_sum(std::span<const Cpx> v) { return pairwise_impl(v); }

GaussLegendre gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: node count must be positive");
    if (!(b > a)) throw std::invalid_argument("gauss_legendre: empty interval");

    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;

    for (int i = 0; i < m; ++i) {
        // Newton iteration for the i-th root of P_n on [-1, 1].
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, pp = 0.0;
        for (int iter = 0; iter < 128; ++iter) {
            p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                // One clean evaluation at the converged node.
                p0 = 1.0;
                p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                break;
            }
        }
        const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

double bessel_i0_scaled(double z) {
    if (z < 0.0) throw std::invalid_argument("bessel_i0_scaled: argument must be nonnegative");
    if (z <= 30.0) {
        // All-positive series, no cancellation; the largest term is a bounded
        // multiple of the sum on this range.
        const double q = 0.25 * z * z;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 256; ++k) {
            term *= q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return std::exp(-z) * sum;
    }
    // I0(z) ~ e^z / sqrt(2 pi z) * sum a_k / z^k, a_k = ((2k-1)!!)^2 / (8^k k!).
    // Terms decrease until k ~ z; at z >= 30 the smallest term is far below
    // double precision, so truncation at the first non-decreasing term is safe.
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 64; ++k) {
        const double next = term * ((2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1.0) * z);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum / std::sqrt(2.0 * kPi * z);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
    return std::lgamma(x);
}

} // namespace focklab
