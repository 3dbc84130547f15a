#include "focklab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "focklab/numerics.hpp"

namespace focklab {

namespace {

// Half-width of the inner window in x = sqrt(v): the Gaussian factor
// e^{-(x - sqrt(u))^2 / 2} is below 2e-22 at the edges.
constexpr double kInnerHalfWidth = 10.0;
constexpr int kInnerPanelNodes = 16;
constexpr int kOuterPanelNodes = 24;

// Inner integral I(u) = int_c^inf (uv)^{-1/4} e^{E(u,v)} dv with v = x^2:
//   I(u) = 2 u^{-1/4} int x^{1/2} e^{E(u, x^2)} dx over x >= sqrt(c).
double inner_integral(double u, double c, double p, double h, const GaussLegendre& panel) {
    const double su = std::sqrt(u);
    const double x_lo = std::max(std::sqrt(c), su - kInnerHalfWidth);
    const double x_hi = su + kInnerHalfWidth;

    const int panels = std::max(8, static_cast<int>(std::ceil(x_hi - x_lo)));
    const double width = (x_hi - x_lo) / panels;

    double max_seen = 0.0;
    double total = 0.0;
    for (int pi = 0; pi < panels; ++pi) {
        const double a = x_lo + pi * width;
        double acc = 0.0;
        for (std::size_t i = 0; i < panel.nodes.size(); ++i) {
            const double x = a + panel.nodes[i] * width;
            const double e = stabilized_inner_exponent(u, x * x, h, p);
            const double val = std::sqrt(x) * std::exp(e);
            max_seen = std::max(max_seen, val);
            acc += panel.weights[i] * width * val;
        }
        total += acc;
    }

    // Dominance at the imposed right cutoff (the left edge is either the
    // exact lower limit c or equally suppressed).
    const double edge = std::sqrt(x_hi) * std::exp(stabilized_inner_exponent(u, x_hi * x_hi, h, p));
    if (max_seen > 0.0 && edge > 1e-16 * max_seen) {
        throw convergence_error("limit_integral_value: inner integrand not decayed at the window edge");
    }
    return 2.0 * std::pow(u, -0.25) * total;
}

} // namespace

double stabilized_inner_exponent(double u, double v, double h, double p) {
    const double d = std::sqrt(u) - std::sqrt(v);
    return -0.5 * d * d - h * v / p;
}

double limit_integral_value(const DoubleIntegralParams& params) {
    const double c = params.c, p = params.p, h = params.h;
    if (!(c > 0.0)) throw std::invalid_argument("limit_integral_value: c must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("limit_integral_value: p must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("limit_integral_value: h must be positive");

    // Unit-interval Gauss rules, rescaled per panel.
    const GaussLegendre inner_panel = gauss_legendre(kInnerPanelNodes, 0.0, 1.0);
    const GaussLegendre outer_panel = gauss_legendre(kOuterPanelNodes, 0.0, 1.0);

    // Outer panels grow geometrically from width 1 at u = c; the integrand
    // [I(u)]^p decays like e^{-u h} so u = 40/h is far past the mass.
    const double u_max = 40.0 / h;
    std::vector<double> panel_sums;
    double max_outer = 0.0;
    double last_outer = 0.0;

    double a = c;
    double width = 1.0;
    while (a < u_max) {
        const double b = std::min(a + width, u_max);
        const double w = b - a;
        double acc = 0.0;
        for (std::size_t i = 0; i < outer_panel.nodes.size(); ++i) {
            const double u = a + outer_panel.nodes[i] * w;
            const double iu = inner_integral(u, c, p, h, inner_panel);
            const double val = std::pow(iu, p);
            max_outer = std::max(max_outer, val);
            last_outer = val;
            acc += outer_panel.weights[i] * w * val;
        }
        panel_sums.push_back(acc);
        a = b;
        width *= 2.0;
    }

    if (max_outer > 0.0 && last_outer > 1e-15 * max_outer) {
        throw convergence_error("limit_integral_value: outer integrand not decayed at the cutoff");
    }
    return h * pairwise_sum(std::span<const double>(panel_sums));
}

LimitEstimate extrapolate_limit(double c, double p, std::span<const double> hs) {
    if (hs.size() < 3) {
        throw std::invalid_argument("extrapolate_limit: need at least 3 decreasing h values");
    }
    for (std::size_t i = 1; i < hs.size(); ++i) {
        if (!(hs[i] < hs[i - 1])) {
            throw std::invalid_argument("extrapolate_limit: h sequence must be strictly decreasing");
        }
    }

    LimitEstimate out;
    for (double h : hs) {
        out.h_values.push_back(h);
        out.values.push_back(limit_integral_value({c, p, h}));
    }

    // The leading error is O(sqrt(h)); fit V0 + a x + b x^2 in x = sqrt(h)
    // through the last three points and read off V0.
    const std::size_t m = out.values.size();
    const double x0 = std::sqrt(out.h_values[m - 3]);
    const double x1 = std::sqrt(out.h_values[m - 2]);
    const double x2 = std::sqrt(out.h_values[m - 1]);
    const double v0 = out.values[m - 3], v1 = out.values[m - 2], v2 = out.values[m - 1];
    out.estimate = v0 * (x1 * x2) / ((x1 - x0) * (x2 - x0)) +
                   v1 * (x0 * x2) / ((x0 - x1) * (x2 - x1)) +
                   v2 * (x0 * x1) / ((x0 - x2) * (x1 - x2));

    const double d1 = out.values[m - 2] - out.values[m - 3];
    const double d2 = out.values[m - 1] - out.values[m - 2];
    out.monotone_tail = d1 * d2 > 0.0 || (d1 == 0.0 && d2 == 0.0);
    return out;
}

} // namespace focklab
