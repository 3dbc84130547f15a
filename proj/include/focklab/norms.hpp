#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "focklab/kernel.hpp"
#include "focklab/operators.hpp"

namespace focklab {

// Exponent/scale triple (p, t, s) with conjugate exponent q, 1/p + 1/q = 1.
// Boundedness of S_t and T_t on L^p(C^n, dv_s) holds exactly on p t = 2 s.
struct ParamTriple {
    double p = 2.0;
    double t = 1.0;
    double s = 1.0;

    bool has_conjugate() const { return p > 1.0; }
    double q() const; // throws for p = 1 (q would be infinite)
};

ParamTriple make_triple(double p, double t, double s);

// |pt - 2s| <= 1e-12 * pt. Inputs are decimal CLI reals, so exact rational
// equality is never assumed.
bool at_threshold(const ParamTriple& params);

// Weight exponent of the Schur test function h(z) = e^{lambda |z|^2}:
// lambda = t/(2q) = (2s - t)/(2p) on the threshold. Requires p > 1.
double schur_lambda(const ParamTriple& params);

struct SchurCertificate {
    double lambda = 0.0;
    double c1 = 0.0; // first Schur constant (t/(t - q lambda))^n
    double c2 = 0.0; // second Schur constant (t/(s - p lambda))^n
    double bound = 0.0; // c1^{1/q} c2^{1/p} = 2^n
    // Relative residuals of the two Schur identities at the sample points
    // (they are equalities for this lambda, so residuals are rounding-level).
    std::vector<double> residual_first;
    std::vector<double> residual_second;
};

// Certifies the upper bound 2^n through the Schur test with weight
// h(z) = e^{lambda |z|^2}. Both Schur integrals are evaluated in closed form
// through kernel_abs_integral and compared against 2^n h^q / 2^n h^p at the
// samples. Requires p > 1 and pt = 2s.
SchurCertificate schur_certify(const ParamTriple& params, int n, std::span<const PointCn> samples);
SchurCertificate schur_certify(const ParamTriple& params, int n); // default sample set

struct FepsResult {
    double ratio = 0.0;          // eps^{1/p} ||A f_eps||_{L^p(0, x_max)}
    double tail_fraction = 0.0;  // e^{-eps x_max}: L^p mass of f_eps beyond the cutoff
    bool truncation_adequate = false; // tail_fraction <= 1%
};

// Lower bound for ||A|| (hence ||T_t|| at the threshold) from the family
// f_eps(y) = e^{-eps y / p}, whose exact norm on (0, inf) is eps^{-1/p}.
// Truncation only shrinks the ratio, so the value is a valid lower bound
// even when the tail flag fires.
FepsResult lower_bound_feps(double t, double p, double eps, const RadialOperatorA& A);

struct PowerIterationOptions {
    double rel_tol = 1e-11;
    int max_iterations = 5000;
};

struct PowerIterationResult {
    double sigma = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Largest singular value of the symmetrized Nystrom discretization of A
// (p = 2 only). The kernel is positive semidefinite, so the Rayleigh
// quotients increase monotonically toward the top of the spectrum.
PowerIterationResult lower_bound_power_iteration(const RadialOperatorA& A,
                                                 const PowerIterationOptions& opts = {});

// ||S_t f_{x,k}||_p^p / ||f_{x,k}||_p^p in closed form for
// f_{x,k}(z) = e^{-x|z|^2} z_1^k (the Gamma factors cancel):
//   (t/(t+x))^{p(n+k)} ((s+px)/s)^{n + pk/2},
// computed in log space.
double witness_ratio_fxk(const ParamTriple& params, double x, long long k, int n);

// True when s - q(s - t) > 0, i.e. the adjoint image of the family is
// integrable at all. Requires p > 1.
bool adjoint_integrable(const ParamTriple& params);

// ||S_t^* f_{x,k}||_q^q / ||f_{x,k}||_q^q in closed form; +infinity when the
// adjoint image fails integrability (s - q(s-t) <= 0). Requires p > 1.
double witness_ratio_adjoint_fxk(const ParamTriple& params, double x, long long k, int n);

// gamma = s - t + t^2/(4s) = (2s - t)^2 / (4s) >= 0. Positive gamma is the
// p = 1 unboundedness witness (growth exponent of the image of a unimodular
// family); it vanishes exactly on t = 2s.
double p1_growth_exponent(double t, double s);

enum class WitnessFamily { FxK, AdjointFxK, P1Exponent };

struct Witness {
    WitnessFamily family = WitnessFamily::FxK;
    double x = 0.0;
    long long k = 0;
    double ratio = 0.0; // achieved norm ratio (FxK families); +inf when divergent
    double gamma = 0.0; // growth exponent (P1Exponent family)
    bool divergent = false;
};

struct NormEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<std::string> methods;
};

struct Classification {
    enum class Kind { Bounded, Unbounded, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::optional<NormEstimate> estimate; // present when Bounded
    std::optional<Witness> witness;       // present when Unbounded
};

struct ClassifyOptions {
    // Witness search grid: x log-spaced, k up to k_max, ratio threshold that
    // declares unboundedness evidence.
    double x_min = 1e-3;
    double x_max = 1e2;
    int x_count = 60;
    long long k_max = 5000;
    double threshold = 1e3;
    // Lower-bound experiment attached to Bounded results; switched off by
    // bulk scans where only the dichotomy matters (the fallback lower bound
    // is 1, from the constant function).
    bool attach_lower_bound = true;
    double feps_eps = 1e-3;
    double feps_x_max = 4000.0;
    int feps_nodes = 3200;
};

// Bounded (upper 2^n) iff pt = 2s within relative 1e-12; otherwise a
// concrete witness from the applicable family (f_{x,k} when pt > 2s, the
// adjoint family or the p = 1 exponent when pt < 2s). A search that
// exhausts the grid reports Inconclusive, never a silent Bounded.
Classification classify(const ParamTriple& params, int n, const ClassifyOptions& opts = {});

struct ReductionAB {
    double t_prime = 0.0;       // a + b
    double s_prime = 0.0;       // s + p a
    bool threshold_holds = false; // p(a+b) = 2(s + pa) within relative 1e-12
};

// Parameter reduction for the two-weight operators S_{a,b}, T_{a,b}:
// boundedness on L^p(dv_s) equals boundedness of S_{a+b} on L^p(dv_{s+pa}).
ReductionAB reduce_ab(double a, double b, double s, double p);

// Empirical lower bound for ||S_t|| on L^p(dv_{pt/2}) from random-phase
// trial functions. Reported separately from the certified T_t bounds and
// never claimed to converge.
double lower_bound_S_random(double t, double p, int trials, unsigned seed);

} // namespace focklab
