#include "focklab/operators.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace focklab {

namespace {

void check_apply_args(const OperatorSpec& spec, OperatorKind expected, const GridFunction& f,
                      std::span<const Cpx> z, const QuadratureRule& rule, double measure_scale) {
    if (spec.kind != expected) throw std::invalid_argument("apply: operator kind mismatch");
    if (spec.n != rule.dimension() || f.dimension() != rule.dimension() ||
        static_cast<int>(z.size()) != rule.dimension()) {
        throw std::invalid_argument("apply: dimension mismatch between spec, function, point, rule");
    }
    if (f.size() != rule.node_count()) {
        throw std::invalid_argument("apply: sample count does not match the rule's node count");
    }
    if (std::abs(measure_scale - rule.scale()) > 1e-12 * measure_scale) {
        throw std::invalid_argument("apply: rule was built for a different measure scale");
    }
}

// Shared integration core: sum of weight * phase(t <z,w>) * f(w) over the grid,
// with phase either exp (S-type) or |exp| (T-type).
template <bool Modulus>
Cpx kernel_integral(double t, const GridFunction& f, std::span<const Cpx> z,
                    const QuadratureRule& rule) {
    const std::size_t cm = rule.coord_node_count();
    const auto vals = f.values();
    std::vector<Cpx> outer(cm);
    if (rule.dimension() == 1) {
        for (std::size_t c = 0; c < cm; ++c) {
            const Cpx ip = z[0] * std::conj(rule.coord_point(c));
            const Cpx ker = Modulus ? Cpx(std::exp(t * ip.real()), 0.0) : std::exp(t * ip);
            outer[c] = rule.coord_weight(c) * ker * vals[c];
        }
        return pairwise_sum(std::span<const Cpx>(outer));
    }
    std::vector<Cpx> inner(cm);
    for (std::size_t c1 = 0; c1 < cm; ++c1) {
        const Cpx ip1 = z[0] * std::conj(rule.coord_point(c1));
        const std::size_t base = c1 * cm;
        for (std::size_t c2 = 0; c2 < cm; ++c2) {
            const Cpx ip = ip1 + z[1] * std::conj(rule.coord_point(c2));
            const Cpx ker = Modulus ? Cpx(std::exp(t * ip.real()), 0.0) : std::exp(t * ip);
            inner[c2] = rule.coord_weight(c2) * ker * vals[base + c2];
        }
        outer[c1] = rule.coord_weight(c1) * pairwise_sum(std::span<const Cpx>(inner));
    }
    return pairwise_sum(std::span<const Cpx>(outer));
}

double adjoint_prefactor(const OperatorSpec& spec, std::span<const Cpx> z) {
    return std::pow(spec.t / spec.s, spec.n) * std::exp((spec.s - spec.t) * abs2(z));
}

} // namespace

OperatorSpec make_operator(OperatorKind kind, double t, double s, int n) {
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("make_operator: scales must be positive");
    if (n < 1) throw std::invalid_argument("make_operator: dimension must be >= 1");
    return OperatorSpec{kind, t, s, n};
}

Cpx apply_S(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
            const QuadratureRule& rule) {
    check_apply_args(spec, OperatorKind::S, f, z, rule, spec.t);
    return kernel_integral<false>(spec.t, f, z, rule);
}

Cpx apply_T(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
            const QuadratureRule& rule) {
    check_apply_args(spec, OperatorKind::T, f, z, rule, spec.t);
    return kernel_integral<true>(spec.t, f, z, rule);
}

Cpx apply_S_adjoint(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
                    const QuadratureRule& rule) {
    check_apply_args(spec, OperatorKind::SAdjoint, f, z, rule, spec.s);
    return adjoint_prefactor(spec, z) * kernel_integral<false>(spec.t, f, z, rule);
}

Cpx apply_T_adjoint(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
                    const QuadratureRule& rule) {
    check_apply_args(spec, OperatorKind::TAdjoint, f, z, rule, spec.s);
    return adjoint_prefactor(spec, z) * kernel_integral<true>(spec.t, f, z, rule);
}

RadialOperatorA::RadialOperatorA(double t, double x_max, int node_count,
                                 std::vector<double> breakpoints)
    : t_(t), x_max_(x_max) {
    if (!(t > 0.0)) throw std::invalid_argument("RadialOperatorA: scale must be positive");
    if (!(x_max > 0.0)) throw std::invalid_argument("RadialOperatorA: domain truncation must be positive");
    if (node_count < 2) throw std::invalid_argument("RadialOperatorA: need at least 2 nodes");
    std::vector<double> edges{0.0};
    for (double b : breakpoints) {
        if (!(b > edges.back() && b < x_max)) {
            throw std::invalid_argument(
                "RadialOperatorA: breakpoints must increase strictly inside (0, x_max)");
        }
        edges.push_back(b);
    }
    edges.push_back(x_max);
    for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        GaussLegendre gl = gauss_legendre(node_count, edges[seg], edges[seg + 1]);
        nodes_.insert(nodes_.end(), gl.nodes.begin(), gl.nodes.end());
        weights_.insert(weights_.end(), gl.weights.begin(), gl.weights.end());
    }
}

double kernel_A_eval(const RadialOperatorA& A, double x, double y) {
    if (x < 0.0 || y < 0.0) throw std::invalid_argument("kernel_A_eval: arguments must be nonnegative");
    const double t = A.t();
    const double d = std::sqrt(x) - std::sqrt(y);
    return t * std::exp(-0.5 * t * d * d) * bessel_i0_scaled(t * std::sqrt(x * y));
}

RadialApplyResult apply_A(const RadialOperatorA& A, std::span<const double> g) {
    const int n = A.count();
    if (static_cast<int>(g.size()) != n) {
        throw std::invalid_argument("apply_A: profile must be sampled on the rule nodes");
    }
    RadialApplyResult out;
    out.values.resize(static_cast<std::size_t>(n));
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = A.node(i);
        for (int j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] =
                kernel_A_eval(A, x, A.node(j)) * A.weight(j) * g[static_cast<std::size_t>(j)];
        }
        out.values[static_cast<std::size_t>(i)] = pairwise_sum(std::span<const double>(row));
    }

    const double edge = 0.95 * A.x_max();
    double total = 0.0, tail = 0.0;
    for (int j = 0; j < n; ++j) {
        const double mass = std::abs(g[static_cast<std::size_t>(j)]) * A.weight(j);
        total += mass;
        if (A.node(j) > edge) tail += mass;
    }
    out.tail_share = total > 0.0 ? tail / total : 0.0;
    return out;
}

double apply_A_at(const RadialOperatorA& A, std::span<const double> g, double x) {
    if (x < 0.0) throw std::invalid_argument("apply_A_at: point must be nonnegative");
    const int n = A.count();
    if (static_cast<int>(g.size()) != n) {
        throw std::invalid_argument("apply_A_at: profile must be sampled on the rule nodes");
    }
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        row[static_cast<std::size_t>(j)] =
            kernel_A_eval(A, x, A.node(j)) * A.weight(j) * g[static_cast<std::size_t>(j)];
    }
    return pairwise_sum(std::span<const double>(row));
}

double radial_correspondence_check(double t, const std::function<double(double)>& G, Cpx z,
                                   const QuadratureRule& rule, const RadialOperatorA& A) {
    if (rule.dimension() != 1) {
        throw std::invalid_argument("radial_correspondence_check: needs a one-dimensional rule");
    }
    if (std::abs(t - rule.scale()) > 1e-12 * t || std::abs(t - A.t()) > 1e-12 * t) {
        throw std::invalid_argument("radial_correspondence_check: scale mismatch between rules");
    }
    // The grid side sees radii up to R, i.e. profile arguments up to R^2; the
    // 1D side must cover at least that range or the two truncations diverge.
    if (A.x_max() + 1e-9 < rule.radius() * rule.radius()) {
        throw std::invalid_argument(
            "radial_correspondence_check: 1D truncation shorter than the grid rule's R^2");
    }

    const OperatorSpec spec = make_operator(OperatorKind::T, t, t, 1);
    const GridFunction f = sample(rule, [&](std::span<const Cpx> w) {
        const double y = std::norm(w[0]);
        return Cpx(G(y) * std::exp(0.5 * t * y), 0.0);
    });
    const std::array<Cpx, 1> zz{z};
    const Cpx left = apply_T(spec, f, std::span<const Cpx>(zz.data(), 1), rule);

    std::vector<double> g_samples(static_cast<std::size_t>(A.count()));
    for (int j = 0; j < A.count(); ++j) g_samples[static_cast<std::size_t>(j)] = G(A.node(j));
    const double x = std::norm(z);
    const double right = std::exp(0.5 * t * x) * apply_A_at(A, g_samples, x);

    return std::abs(left - right);
}

} // namespace focklab
