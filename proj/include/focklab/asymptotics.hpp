#pragma once

#include <span>
#include <vector>

#include "focklab/errors.hpp"

namespace focklab {

// Parameters of the double integral
//   V(h) = h int_c^inf [ int_c^inf (uv)^{-1/4}
//            exp( sqrt(uv) - (u+v)/2 - h v / p ) dv ]^p du,
// whose h -> 0+ limit is (2 sqrt(2 pi))^p for every c > 0. V drives the
// sharp lower bound for the radial reduction operator.
struct DoubleIntegralParams {
    double c = 1.0;
    double p = 1.0;
    double h = 1e-3;
};

// The inner exponent in the form actually evaluated:
//   -(sqrt(u) - sqrt(v))^2 / 2 - h v / p  (always <= 0),
// never the catastrophic difference sqrt(uv) - (u+v)/2.
double stabilized_inner_exponent(double u, double v, double h, double p);

// V(h) by quadrature. The inner integral uses a moving window centered at
// v ~ u (where the exponent peaks) with width scaled by sqrt(u); the outer
// integral uses geometrically growing panels up to u = 40/h. Truncation
// dominance is checked at every imposed cutoff.
double limit_integral_value(const DoubleIntegralParams& params);

struct LimitEstimate {
    std::vector<double> h_values;
    std::vector<double> values;  // V(h) per h
    double estimate = 0.0;       // extrapolated h -> 0 value
    bool monotone_tail = false;  // last steps move in one direction
};

// Richardson-style extrapolation in powers of sqrt(h) over a decreasing h
// sequence (at least 3 values).
LimitEstimate extrapolate_limit(double c, double p, std::span<const double> hs);

} // namespace focklab
