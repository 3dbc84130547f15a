#include "focklab/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace focklab {

namespace {

bool scales_match(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

int default_radial(int n, double tol) {
    const int base = tol <= 1e-9 ? 400 : (tol <= 1e-7 ? 256 : 160);
    return n == 1 ? base : base / 2;
}

int default_angular(int n, double tol) {
    const int base = tol <= 1e-9 ? 256 : (tol <= 1e-7 ? 160 : 96);
    return n == 1 ? base : base / 2;
}

} // namespace

GaussianMeasure make_measure(int n, double t) {
    if (n < 1) throw std::invalid_argument("make_measure: dimension must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("make_measure: scale must be positive");
    return GaussianMeasure{n, t};
}

MultiIndex::MultiIndex(std::vector<int> e) : entries(std::move(e)) {
    for (int mk : entries) {
        if (mk < 0) throw std::invalid_argument("MultiIndex: entries must be nonnegative");
    }
}

int MultiIndex::order() const {
    int s = 0;
    for (int mk : entries) s += mk;
    return s;
}

double MultiIndex::log_factorial() const {
    double s = 0.0;
    for (int mk : entries) s += log_gamma(static_cast<double>(mk) + 1.0);
    return s;
}

QuadratureRule build_rule(int n, double t, double tol, const RuleOptions& opts) {
    if (n != 1 && n != 2) {
        throw std::invalid_argument(
            "build_rule: grid quadrature supports n in {1,2}; larger dimensions are served "
            "by closed forms");
    }
    if (!(t > 0.0)) throw std::invalid_argument("build_rule: scale must be positive");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("build_rule: tolerance must be in (0,1)");
    if (opts.growth < 0.0) throw std::invalid_argument("build_rule: growth allowance must be >= 0");

    // Truncation: t R^2 - growth * R >= log(1/tol) + 40; the additive margin
    // absorbs polynomial factors up to degree ~20.
    const double budget = std::log(1.0 / tol) + 40.0;
    double radius = opts.radius;
    if (radius <= 0.0) {
        radius = opts.growth > 0.0
                     ? (opts.growth + std::sqrt(opts.growth * opts.growth + 4.0 * t * budget)) / (2.0 * t)
                     : std::sqrt(budget / t);
    }

    const int radial = opts.radial_nodes > 0 ? opts.radial_nodes : default_radial(n, tol);
    int angular = opts.angular_nodes;
    if (angular <= 0) {
        angular = default_angular(n, tol);
        // e^{g r cos(theta)} needs roughly g*R angular nodes before the
        // trapezoidal rule locks on.
        const double osc = opts.growth * radius;
        if (osc > 0.0) angular = std::max(angular, static_cast<int>(std::ceil(1.4 * osc)) + 48);
    }

    QuadratureRule rule;
    rule.dimension_ = n;
    rule.scale_ = t;
    rule.tolerance_ = tol;
    rule.radius_ = radius;
    rule.angular_count_ = angular;
    rule.inv_angular_ = 1.0 / static_cast<double>(angular);

    std::vector<double> edges{0.0};
    for (double b : opts.radial_breakpoints) {
        if (!(b > edges.back() && b < radius)) {
            throw std::invalid_argument(
                "build_rule: radial breakpoints must increase strictly inside (0, R)");
        }
        edges.push_back(b);
    }
    edges.push_back(radius);

    for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        GaussLegendre gl = gauss_legendre(radial, edges[seg], edges[seg + 1]);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double r = gl.nodes[i];
            rule.radial_nodes_.push_back(r);
            rule.radial_weights_.push_back(2.0 * t * r * std::exp(-t * r * r) * gl.weights[i]);
        }
    }

    rule.units_.resize(static_cast<std::size_t>(angular));
    for (int j = 0; j < angular; ++j) {
        const double theta = 2.0 * kPi * j / angular;
        rule.units_[static_cast<std::size_t>(j)] = Cpx(std::cos(theta), std::sin(theta));
    }

    // Self-check: the rule must integrate 1 to 1 within the tolerance.
    const double mass = pairwise_sum(std::span<const double>(rule.radial_weights_));
    const double total = n == 1 ? mass : mass * mass;
    if (std::abs(total - 1.0) > tol) {
        throw convergence_error("build_rule: normalization self-check failed, |mass-1| = " +
                                std::to_string(std::abs(total - 1.0)));
    }
    return rule;
}

Cpx integrate(const GridFunction& f, const GaussianMeasure& mu, const QuadratureRule& rule) {
    if (f.dimension() != rule.dimension() || mu.dimension != rule.dimension()) {
        throw std::invalid_argument("integrate: dimension mismatch between function, measure, rule");
    }
    if (!scales_match(mu.scale, rule.scale())) {
        throw std::invalid_argument("integrate: rule was built for a different measure scale");
    }
    if (f.size() != rule.node_count()) {
        throw std::invalid_argument("integrate: sample count does not match the rule's node count");
    }

    const std::size_t cm = rule.coord_node_count();
    const auto vals = f.values();
    std::vector<Cpx> outer(cm);
    if (rule.dimension() == 1) {
        for (std::size_t c = 0; c < cm; ++c) outer[c] = rule.coord_weight(c) * vals[c];
        return pairwise_sum(std::span<const Cpx>(outer));
    }
    std::vector<Cpx> inner(cm);
    for (std::size_t c1 = 0; c1 < cm; ++c1) {
        const std::size_t base = c1 * cm;
        for (std::size_t c2 = 0; c2 < cm; ++c2) inner[c2] = rule.coord_weight(c2) * vals[base + c2];
        outer[c1] = rule.coord_weight(c1) * pairwise_sum(std::span<const Cpx>(inner));
    }
    return pairwise_sum(std::span<const Cpx>(outer));
}

double gaussian_monomial_moment(const MultiIndex& m, double p, double t) {
    if (!(p > 0.0)) throw std::invalid_argument("gaussian_monomial_moment: p must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("gaussian_monomial_moment: t must be positive");
    double log_value = 0.0;
    for (int mk : m.entries) {
        if (mk < 0) throw std::invalid_argument("gaussian_monomial_moment: negative multi-index entry");
        const double half = 0.5 * p * mk;
        log_value += log_gamma(half + 1.0) - half * std::log(t);
    }
    return std::exp(log_value);
}

double lp_norm(const GridFunction& f, double p, double s, const QuadratureRule& rule) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (!(s > 0.0)) throw std::invalid_argument("lp_norm: s must be positive");
    if (f.dimension() != rule.dimension()) throw std::invalid_argument("lp_norm: dimension mismatch");
    if (!scales_match(s, rule.scale())) {
        throw std::invalid_argument("lp_norm: rule was built for a different measure scale");
    }
    if (f.size() != rule.node_count()) {
        throw std::invalid_argument("lp_norm: sample count does not match the rule's node count");
    }

    const std::size_t cm = rule.coord_node_count();
    const auto vals = f.values();
    std::vector<double> outer(cm);
    if (rule.dimension() == 1) {
        for (std::size_t c = 0; c < cm; ++c) {
            outer[c] = rule.coord_weight(c) * std::pow(std::abs(vals[c]), p);
        }
        const double total = pairwise_sum(std::span<const double>(outer));
        return std::pow(std::max(total, 0.0), 1.0 / p);
    }
    std::vector<double> inner(cm);
    for (std::size_t c1 = 0; c1 < cm; ++c1) {
        const std::size_t base = c1 * cm;
        for (std::size_t c2 = 0; c2 < cm; ++c2) {
            inner[c2] = rule.coord_weight(c2) * std::pow(std::abs(vals[base + c2]), p);
        }
        outer[c1] = rule.coord_weight(c1) * pairwise_sum(std::span<const double>(inner));
    }
    const double total = pairwise_sum(std::span<const double>(outer));
    return std::pow(std::max(total, 0.0), 1.0 / p);
}

} // namespace focklab
