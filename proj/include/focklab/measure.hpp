#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/numerics.hpp"

namespace focklab {

// Gaussian probability measure (t/pi)^n e^{-t|z|^2} dv(z) on C^n.
struct GaussianMeasure {
    int dimension = 1;
    double scale = 1.0;
};

GaussianMeasure make_measure(int n, double t);

struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e);

    int dimension() const { return static_cast<int>(entries.size()); }
    int order() const;            // |m| = m_1 + ... + m_n
    double log_factorial() const; // log(m!) = sum log(m_k!)
};

struct RuleOptions {
    int radial_nodes = 0;   // 0 selects a default from the tolerance
    int angular_nodes = 0;
    double radius = 0.0;    // explicit truncation radius override
    double growth = 0.0;    // per-coordinate allowance for integrands ~ e^{growth * r}
    // Interior radii where the integrand is allowed to jump; the radial rule
    // becomes a composite Gauss rule with panels split at these points.
    std::vector<double> radial_breakpoints;
};

// Polar product grid for integration against dv_t: per complex coordinate a
// Gauss-Legendre rule on [0, R] with the substituted weight 2 t r e^{-t r^2}
// and a uniform angular rule on [0, 2pi) (exact for trigonometric
// polynomials below the node count). For n = 2 the grid is the tensor
// product of two identical coordinate grids.
class QuadratureRule {
public:
    int dimension() const { return dimension_; }
    double scale() const { return scale_; }
    double tolerance() const { return tolerance_; }
    double radius() const { return radius_; }

    int radial_count() const { return static_cast<int>(radial_nodes_.size()); }
    int angular_count() const { return angular_count_; }

    // Nodes of one complex coordinate: index c = i * angular_count + j.
    std::size_t coord_node_count() const {
        return radial_nodes_.size() * static_cast<std::size_t>(angular_count_);
    }
    std::size_t node_count() const {
        const std::size_t c = coord_node_count();
        return dimension_ == 1 ? c : c * c;
    }

    double radial_node(int i) const { return radial_nodes_[static_cast<std::size_t>(i)]; }
    // Includes the Gaussian factor: w_i = 2 t r_i e^{-t r_i^2} glw_i.
    double radial_weight(int i) const { return radial_weights_[static_cast<std::size_t>(i)]; }
    Cpx unit(int j) const { return units_[static_cast<std::size_t>(j)]; }

    // Weight of coordinate node c (radial weight / angular count).
    double coord_weight(std::size_t c) const {
        return radial_weights_[c / static_cast<std::size_t>(angular_count_)] * inv_angular_;
    }
    Cpx coord_point(std::size_t c) const {
        return radial_nodes_[c / static_cast<std::size_t>(angular_count_)] *
               units_[c % static_cast<std::size_t>(angular_count_)];
    }

    friend QuadratureRule build_rule(int n, double t, double tol, const RuleOptions& opts);

private:
    int dimension_ = 1;
    double scale_ = 1.0;
    double tolerance_ = 0.0;
    double radius_ = 0.0;
    int angular_count_ = 0;
    double inv_angular_ = 0.0;
    std::vector<double> radial_nodes_;
    std::vector<double> radial_weights_;
    std::vector<Cpx> units_; // e^{i theta_j}
};

QuadratureRule build_rule(int n, double t, double tol, const RuleOptions& opts = {});

// Samples of a function on the polar grid of a rule, in coordinate-node
// order: n = 1 index c; n = 2 index c1 * coord_node_count + c2.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(int dimension, std::vector<Cpx> values)
        : dimension_(dimension), values_(std::move(values)) {}

    int dimension() const { return dimension_; }
    std::size_t size() const { return values_.size(); }
    std::span<const Cpx> values() const { return values_; }
    std::span<Cpx> values() { return values_; }
    const Cpx& operator[](std::size_t i) const { return values_[i]; }
    Cpx& operator[](std::size_t i) { return values_[i]; }

private:
    int dimension_ = 1;
    std::vector<Cpx> values_;
};

// Evaluates f at every grid node. f receives a span of n complex coordinates.
template <class F>
GridFunction sample(const QuadratureRule& rule, F&& f) {
    std::vector<Cpx> values(rule.node_count());
    std::array<Cpx, 2> pt{};
    const std::size_t cm = rule.coord_node_count();
    if (rule.dimension() == 1) {
        for (std::size_t c = 0; c < cm; ++c) {
            pt[0] = rule.coord_point(c);
            values[c] = f(std::span<const Cpx>(pt.data(), 1));
        }
    } else {
        for (std::size_t c1 = 0; c1 < cm; ++c1) {
            pt[0] = rule.coord_point(c1);
            for (std::size_t c2 = 0; c2 < cm; ++c2) {
                pt[1] = rule.coord_point(c2);
                values[c1 * cm + c2] = f(std::span<const Cpx>(pt.data(), 2));
            }
        }
    }
    return GridFunction(rule.dimension(), std::move(values));
}

// Quadrature of f against mu. The rule must have been built for the same
// dimension and scale.
Cpx integrate(const GridFunction& f, const GaussianMeasure& mu, const QuadratureRule& rule);

// Streaming variant: evaluates f node by node without materializing a grid.
// The summation order matches integrate() on a sampled grid.
template <class F>
Cpx integrate_fn(const QuadratureRule& rule, F&& f) {
    std::array<Cpx, 2> pt{};
    const std::size_t cm = rule.coord_node_count();
    std::vector<Cpx> outer(cm);
    if (rule.dimension() == 1) {
        for (std::size_t c = 0; c < cm; ++c) {
            pt[0] = rule.coord_point(c);
            outer[c] = rule.coord_weight(c) * f(std::span<const Cpx>(pt.data(), 1));
        }
        return pairwise_sum(std::span<const Cpx>(outer));
    }
    std::vector<Cpx> inner(cm);
    for (std::size_t c1 = 0; c1 < cm; ++c1) {
        pt[0] = rule.coord_point(c1);
        for (std::size_t c2 = 0; c2 < cm; ++c2) {
            pt[1] = rule.coord_point(c2);
            inner[c2] = rule.coord_weight(c2) * f(std::span<const Cpx>(pt.data(), 2));
        }
        outer[c1] = rule.coord_weight(c1) * pairwise_sum(std::span<const Cpx>(inner));
    }
    return pairwise_sum(std::span<const Cpx>(outer));
}

// Closed form of int |z^m|^p dv_t = prod_k Gamma(p m_k / 2 + 1) / t^{p m_k / 2},
// evaluated through log-Gamma so large orders cannot overflow.
double gaussian_monomial_moment(const MultiIndex& m, double p, double t);

// (int |f|^p dv_s)^{1/p} by quadrature; the rule must match scale s.
double lp_norm(const GridFunction& f, double p, double s, const QuadratureRule& rule);

} // namespace focklab
