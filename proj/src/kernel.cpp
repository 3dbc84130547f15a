#include "focklab/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace focklab {

KernelParams make_kernel(double t, int n) {
    if (!(t > 0.0)) throw std::invalid_argument("make_kernel: scale must be positive");
    if (n < 1) throw std::invalid_argument("make_kernel: dimension must be >= 1");
    return KernelParams{t, n};
}

Cpx inner(std::span<const Cpx> z, std::span<const Cpx> w) {
    if (z.size() != w.size()) throw std::invalid_argument("inner: dimension mismatch");
    Cpx acc{};
    for (std::size_t k = 0; k < z.size(); ++k) acc += z[k] * std::conj(w[k]);
    return acc;
}

double abs2(std::span<const Cpx> z) {
    double acc = 0.0;
    for (const Cpx& zk : z) acc += std::norm(zk);
    return acc;
}

Cpx eval_kernel(const KernelParams& params, std::span<const Cpx> z, std::span<const Cpx> w) {
    if (static_cast<int>(z.size()) != params.n || static_cast<int>(w.size()) != params.n) {
        throw std::invalid_argument("eval_kernel: dimension mismatch");
    }
    return std::exp(params.t * inner(z, w));
}

double kernel_abs_integral(std::span<const Cpx> a, double sigma, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_abs_integral: t must be positive");
    return std::exp(sigma * sigma * abs2(a) / (4.0 * t));
}

Cpx MonomialPoly::eval(std::span<const Cpx> z) const {
    if (static_cast<int>(z.size()) != dimension) {
        throw std::invalid_argument("MonomialPoly::eval: dimension mismatch");
    }
    Cpx acc{};
    for (const auto& [m, coeff] : terms) {
        Cpx mono = 1.0;
        for (int k = 0; k < m.dimension(); ++k) {
            for (int rep = 0; rep < m.entries[static_cast<std::size_t>(k)]; ++rep) {
                mono *= z[static_cast<std::size_t>(k)];
            }
        }
        acc += coeff * mono;
    }
    return acc;
}

int MonomialPoly::degree() const {
    int deg = 0;
    for (const auto& [m, coeff] : terms) deg = std::max(deg, m.order());
    return deg;
}

double reproduce_check(const MonomialPoly& f, std::span<const Cpx> a, double t,
                       const QuadratureRule& rule) {
    if (f.dimension != rule.dimension() || static_cast<int>(a.size()) != rule.dimension()) {
        throw std::invalid_argument("reproduce_check: dimension mismatch with rule");
    }
    if (std::abs(t - rule.scale()) > 1e-12 * t) {
        throw std::invalid_argument("reproduce_check: rule was built for a different scale");
    }
    if (f.degree() > 10) {
        throw std::invalid_argument("reproduce_check: polynomial degree capped at 10");
    }
    const KernelParams params{t, rule.dimension()};
    const Cpx quad = integrate_fn(
        rule, [&](std::span<const Cpx> w) { return eval_kernel(params, a, w) * f.eval(w); });
    return std::abs(quad - f.eval(a));
}

} // namespace focklab
