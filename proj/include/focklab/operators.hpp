#pragma once

#include <functional>
#include <span>
#include <vector>

#include "focklab/kernel.hpp"
#include "focklab/measure.hpp"

namespace focklab {

enum class OperatorKind { S, T, SAdjoint, TAdjoint };

// S_t f(z)  = int e^{t<z,w>}  f(w) dv_t(w)
// T_t f(z)  = int |e^{t<z,w>}| f(w) dv_t(w)
// S_t* f(z) = (t/s)^n e^{(s-t)|z|^2} int e^{t<z,w>}  f(w) dv_s(w)
// T_t* f(z) = (t/s)^n e^{(s-t)|z|^2} int |e^{t<z,w>}| f(w) dv_s(w)
// The adjoints are taken with respect to the L^2(dv_s) pairing; they are
// separate operations because the weight e^{(s-t)|z|^2} changes the
// function class.
struct OperatorSpec {
    OperatorKind kind = OperatorKind::S;
    double t = 1.0;
    double s = 1.0;
    int n = 1;
};

OperatorSpec make_operator(OperatorKind kind, double t, double s, int n);

// The rule must match the integration measure of the operator: scale t for
// S/T, scale s for the adjoints.
Cpx apply_S(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
            const QuadratureRule& rule);
Cpx apply_T(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
            const QuadratureRule& rule);
Cpx apply_S_adjoint(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
                    const QuadratureRule& rule);
Cpx apply_T_adjoint(const OperatorSpec& spec, const GridFunction& f, std::span<const Cpx> z,
                    const QuadratureRule& rule);

// One-dimensional reduction of T_t acting on radial profiles:
//   A g(x) = int_0^inf t e^{-t(x+y)/2} I0(t sqrt(x y)) g(y) dy,
// discretized by Gauss-Legendre on (0, x_max].
class RadialOperatorA {
public:
    // Optional interior breakpoints split (0, x_max] into composite Gauss
    // panels of node_count each, for profiles with jumps.
    RadialOperatorA(double t, double x_max, int node_count,
                    std::vector<double> breakpoints = {});

    double t() const { return t_; }
    double x_max() const { return x_max_; }
    int count() const { return static_cast<int>(nodes_.size()); }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

private:
    double t_ = 1.0;
    double x_max_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// t e^{-t(x+y)/2} K(x,y) in the stable form
// t e^{-t(sqrt(x)-sqrt(y))^2/2} [e^{-t sqrt(xy)} I0(t sqrt(xy))];
// the bracket is the scaled Bessel evaluation, so nothing overflows.
double kernel_A_eval(const RadialOperatorA& A, double x, double y);

struct RadialApplyResult {
    std::vector<double> values; // (A g) at the rule nodes
    double tail_share;          // L1 share of |g| carried by the top 5% of the domain
};

// Quadrature of the truncated integral at every node; positivity-preserving
// for g >= 0. tail_share flags profiles whose mass leans on the cutoff.
RadialApplyResult apply_A(const RadialOperatorA& A, std::span<const double> g);

// (A g)(x) at an arbitrary point.
double apply_A_at(const RadialOperatorA& A, std::span<const double> g, double x);

// |T_t f(z) - e^{t|z|^2/2} (A G)(|z|^2)| for f(w) = G(|w|^2) e^{t|w|^2/2}.
// The two sides go through independent quadratures (2D polar grid vs the 1D
// radial rule).
double radial_correspondence_check(double t, const std::function<double(double)>& G, Cpx z,
                                   const QuadratureRule& rule, const RadialOperatorA& A);

} // namespace focklab
