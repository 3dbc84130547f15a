#pragma once

#include <span>
#include <utility>
#include <vector>

#include "focklab/measure.hpp"

namespace focklab {

using PointCn = std::vector<Cpx>;

// Parameters of the kernel K_t(z, w) = e^{t <z, w>} on C^n.
struct KernelParams {
    double t = 1.0;
    int n = 1;
};

KernelParams make_kernel(double t, int n);

// Hermitian inner product z_1 conj(w_1) + ... + z_n conj(w_n).
Cpx inner(std::span<const Cpx> z, std::span<const Cpx> w);

double abs2(std::span<const Cpx> z); // |z|^2 = <z, z>

Cpx eval_kernel(const KernelParams& params, std::span<const Cpx> z, std::span<const Cpx> w);

// int |e^{sigma <z, a>}| dv_t(z) = e^{sigma^2 |a|^2 / (4t)}, any dimension.
// Closed form; the quadrature cross-check lives in the tests.
double kernel_abs_integral(std::span<const Cpx> a, double sigma, double t);

// Sparse polynomial in z as monomial coefficients.
struct MonomialPoly {
    int dimension = 1;
    std::vector<std::pair<MultiIndex, Cpx>> terms;

    Cpx eval(std::span<const Cpx> z) const;
    int degree() const;
};

// | int e^{t <a, z>} f(z) dv_t(z) - f(a) |. The reference side is exact
// monomial evaluation at a, so the residual isolates quadrature error.
double reproduce_check(const MonomialPoly& f, std::span<const Cpx> a, double t,
                       const QuadratureRule& rule);

} // namespace focklab
