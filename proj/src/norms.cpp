#include "focklab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace focklab {

namespace {

constexpr double kThresholdRelTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log of the f_{x,k} ratio as an affine function of k: base + slope * k.
struct AffineLog {
    double base;
    double slope;
};

AffineLog fxk_log_ratio(const ParamTriple& P, double x, int n) {
    const double a = std::log(P.t / (P.t + x));            // < 0
    const double b = std::log((P.s + P.p * x) / P.s);      // > 0
    return {P.p * n * a + n * b, P.p * a + 0.5 * P.p * b};
}

AffineLog adjoint_log_ratio(const ParamTriple& P, double x, int n) {
    const double q = P.q();
    const double sp = P.s - q * (P.s - P.t); // > 0 checked by the caller
    const double a = std::log(P.t / (P.s + x));
    const double b = std::log((P.s + q * x) / sp);
    const double c = std::log(P.s / sp);
    const double d = std::log((P.s + q * x) / P.s);
    return {q * n * a + n * c + n * d, q * a + 0.5 * q * b};
}

struct GridSearchHit {
    double x;
    long long k;
    double log_ratio;
};

// The log-ratio is affine in k for both families, so for each x either k = 0
// already exceeds the threshold or the smallest sufficient k is read off the
// slope. Returns the hit with the smallest k (ties: smallest x).
template <class LogRatioAt>
std::optional<GridSearchHit> grid_search(const ClassifyOptions& opts, LogRatioAt&& log_ratio_at) {
    const double log_threshold = std::log(opts.threshold);
    std::optional<GridSearchHit> best;
    const double step = opts.x_count > 1
                            ? std::pow(opts.x_max / opts.x_min, 1.0 / (opts.x_count - 1))
                            : 1.0;
    double x = opts.x_min;
    for (int i = 0; i < opts.x_count; ++i, x *= step) {
        const AffineLog lr = log_ratio_at(x);
        long long k = -1;
        if (lr.base >= log_threshold) {
            k = 0;
        } else if (lr.slope > 0.0) {
            const double need = (log_threshold - lr.base) / lr.slope;
            if (need <= static_cast<double>(opts.k_max)) {
                k = static_cast<long long>(std::ceil(need));
            }
        }
        if (k >= 0 && (!best || k < best->k)) {
            best = GridSearchHit{x, k, lr.base + lr.slope * static_cast<double>(k)};
        }
    }
    return best;
}

} // namespace

double ParamTriple::q() const {
    if (!(p > 1.0)) throw std::invalid_argument("ParamTriple::q: conjugate exponent needs p > 1");
    return p / (p - 1.0);
}

ParamTriple make_triple(double p, double t, double s) {
    if (!(p >= 1.0)) throw std::invalid_argument("make_triple: p must be >= 1");
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("make_triple: scales must be positive");
    return ParamTriple{p, t, s};
}

bool at_threshold(const ParamTriple& params) {
    return std::abs(params.p * params.t - 2.0 * params.s) <= kThresholdRelTol * params.p * params.t;
}

double schur_lambda(const ParamTriple& params) {
    if (!(params.p > 1.0)) {
        throw std::invalid_argument(
            "schur_lambda: p = 1 has no Schur weight; the L^1 bound goes through Fubini");
    }
    if (!at_threshold(params)) {
        throw std::invalid_argument("schur_lambda: requires pt = 2s (relative 1e-12)");
    }
    return params.t / (2.0 * params.q());
}

SchurCertificate schur_certify(const ParamTriple& params, int n, std::span<const PointCn> samples) {
    if (n < 1) throw std::invalid_argument("schur_certify: dimension must be >= 1");
    const double lambda = schur_lambda(params); // validates p > 1 and the threshold
    const double q = params.q();
    const double t = params.t, s = params.s, p = params.p;

    // Conditions t > q lambda and s - p lambda > 0, plus the two defining
    // equalities of lambda.
    const double tq = t - q * lambda;
    const double sp = s - p * lambda;
    if (!(tq > 0.0) || !(sp > 0.0)) {
        throw std::invalid_argument("schur_certify: Schur weight conditions violated");
    }
    const double eq_first = t * t / (4.0 * tq) - q * lambda;
    const double eq_second = (s - t) + t * t / (4.0 * sp) - p * lambda;
    if (std::abs(eq_first) > 1e-10 * t || std::abs(eq_second) > 1e-10 * t) {
        throw convergence_error("schur_certify: weight equalities failed; formula bug");
    }

    SchurCertificate cert;
    cert.lambda = lambda;
    cert.c1 = std::pow(t / tq, n);
    cert.c2 = std::pow(t / sp, n);
    cert.bound = std::pow(cert.c1, 1.0 / q) * std::pow(cert.c2, 1.0 / p);

    for (const PointCn& z : samples) {
        if (static_cast<int>(z.size()) != n) {
            throw std::invalid_argument("schur_certify: sample dimension mismatch");
        }
        const double z2 = abs2(z);
        // First integral: int H(z,w) h(w)^q dv_s(w)
        //   = (t/tq)^n int |e^{t<z,w>}| dv_tq(w) = (t/tq)^n e^{t^2 |z|^2 / (4 tq)}.
        const double lhs1 = cert.c1 * kernel_abs_integral(z, t, tq);
        const double rhs1 = cert.c1 * std::exp(q * lambda * z2);
        cert.residual_first.push_back(std::abs(lhs1 - rhs1) / rhs1);
        // Second integral: int H(z,w) h(z)^p dv_s(z)
        //   = (t/sp)^n e^{(s-t)|w|^2} e^{t^2 |w|^2 / (4 sp)}.
        const double lhs2 = cert.c2 * std::exp((s - t) * z2) * kernel_abs_integral(z, t, sp);
        const double rhs2 = cert.c2 * std::exp(p * lambda * z2);
        cert.residual_second.push_back(std::abs(lhs2 - rhs2) / rhs2);
    }
    return cert;
}

SchurCertificate schur_certify(const ParamTriple& params, int n) {
    std::vector<PointCn> samples;
    for (double r : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        PointCn z(static_cast<std::size_t>(n), Cpx(0.0, 0.0));
        z[0] = Cpx(r * 0.8, r * 0.6);
        if (n > 1) z[1] = Cpx(0.3 * r, -0.4 * r);
        samples.push_back(std::move(z));
    }
    return schur_certify(params, n, samples);
}

FepsResult lower_bound_feps(double t, double p, double eps, const RadialOperatorA& A) {
    if (!(eps > 0.0)) throw std::invalid_argument("lower_bound_feps: eps must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("lower_bound_feps: p must be >= 1");
    if (std::abs(t - A.t()) > 1e-12 * t) {
        throw std::invalid_argument("lower_bound_feps: operator was built for a different scale");
    }

    const int n = A.count();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] = std::exp(-eps * A.node(j) / p);

    const RadialApplyResult ag = apply_A(A, g);
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        terms[static_cast<std::size_t>(j)] =
            A.weight(j) * std::pow(std::abs(ag.values[static_cast<std::size_t>(j)]), p);
    }
    const double norm_p = std::pow(pairwise_sum(std::span<const double>(terms)), 1.0 / p);

    FepsResult out;
    out.ratio = std::pow(eps, 1.0 / p) * norm_p;
    out.tail_fraction = std::exp(-eps * A.x_max()); // exact for this family
    out.truncation_adequate = out.tail_fraction <= 0.01;
    return out;
}

PowerIterationResult lower_bound_power_iteration(const RadialOperatorA& A,
                                                 const PowerIterationOptions& opts) {
    const int n = A.count();
    // Symmetrized Nystrom matrix B = D^{1/2} K D^{1/2}, D = diag(weights).
    std::vector<double> sqw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sqw[static_cast<std::size_t>(i)] = std::sqrt(A.weight(i));
    std::vector<double> B(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = sqw[static_cast<std::size_t>(i)] * kernel_A_eval(A, A.node(i), A.node(j)) *
                             sqw[static_cast<std::size_t>(j)];
            B[static_cast<std::size_t>(i) * n + j] = v;
            B[static_cast<std::size_t>(j) * n + i] = v;
        }
    }

    std::vector<double> v(static_cast<std::size_t>(n)), bv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = sqw[static_cast<std::size_t>(i)] * std::exp(-A.node(i) / 2.0);
    }
    double norm0 = 0.0;
    for (double x : v) norm0 += x * x;
    const double vnorm = std::sqrt(norm0);
    for (double& x : v) x /= vnorm;

    PowerIterationResult out;
    double sigma_prev = 0.0;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        for (int i = 0; i < n; ++i) {
            const double* row = &B[static_cast<std::size_t>(i) * n];
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += row[j] * v[static_cast<std::size_t>(j)];
            bv[static_cast<std::size_t>(i)] = acc;
        }
        double norm2 = 0.0;
        for (double x : bv) norm2 += x * x;
        const double sigma = std::sqrt(norm2); // ||B v||, v unit: Rayleigh-type estimate
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = bv[static_cast<std::size_t>(i)] / sigma;
        out.sigma = sigma;
        out.iterations = iter;
        if (iter > 1 && std::abs(sigma - sigma_prev) <= opts.rel_tol * sigma) {
            out.converged = true;
            break;
        }
        sigma_prev = sigma;
    }
    if (!out.converged) {
        throw convergence_error("lower_bound_power_iteration: no convergence within the iteration cap");
    }
    return out;
}

double witness_ratio_fxk(const ParamTriple& params, double x, long long k, int n) {
    if (x < 0.0 || k < 0 || n < 1) throw std::invalid_argument("witness_ratio_fxk: bad arguments");
    const AffineLog lr = fxk_log_ratio(params, x, n);
    return std::exp(lr.base + lr.slope * static_cast<double>(k));
}

bool adjoint_integrable(const ParamTriple& params) {
    return params.s - params.q() * (params.s - params.t) > 0.0;
}

double witness_ratio_adjoint_fxk(const ParamTriple& params, double x, long long k, int n) {
    if (x < 0.0 || k < 0 || n < 1) throw std::invalid_argument("witness_ratio_adjoint_fxk: bad arguments");
    if (!adjoint_integrable(params)) return kInf; // image outside L^q altogether
    const AffineLog lr = adjoint_log_ratio(params, x, n);
    return std::exp(lr.base + lr.slope * static_cast<double>(k));
}

double p1_growth_exponent(double t, double s) {
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("p1_growth_exponent: scales must be positive");
    const double d = 2.0 * s - t;
    return d * d / (4.0 * s);
}

Classification classify(const ParamTriple& params, int n, const ClassifyOptions& opts) {
    if (n < 1) throw std::invalid_argument("classify: dimension must be >= 1");
    Classification result;

    if (at_threshold(params)) {
        NormEstimate est;
        est.upper = std::pow(2.0, n);
        est.methods.push_back(params.p > 1.0 ? "schur" : "fubini");
        if (params.p > 1.0) schur_certify(params, n); // validates the certificate en route
        if (opts.attach_lower_bound) {
            const RadialOperatorA A(params.t, opts.feps_x_max, opts.feps_nodes);
            const FepsResult fr = lower_bound_feps(params.t, params.p, opts.feps_eps, A);
            est.lower = std::pow(fr.ratio, n);
            est.methods.push_back("f_eps");
            if (n > 1) est.methods.push_back("tensor");
        } else {
            est.lower = 1.0; // T_t fixes constants, so 1 is always a valid lower bound
            est.methods.push_back("constant_function");
        }
        result.kind = Classification::Kind::Bounded;
        result.estimate = est;
        return result;
    }

    const double pt = params.p * params.t;
    const double twos = 2.0 * params.s;

    if (params.p == 1.0) {
        Witness w;
        w.family = WitnessFamily::P1Exponent;
        w.gamma = p1_growth_exponent(params.t, params.s);
        result.kind = Classification::Kind::Unbounded;
        result.witness = w;
        return result;
    }

    if (pt > twos) {
        const auto hit = grid_search(opts, [&](double x) { return fxk_log_ratio(params, x, n); });
        if (hit) {
            Witness w;
            w.family = WitnessFamily::FxK;
            w.x = hit->x;
            w.k = hit->k;
            w.ratio = std::exp(hit->log_ratio);
            result.kind = Classification::Kind::Unbounded;
            result.witness = w;
        } else {
            result.kind = Classification::Kind::Inconclusive;
        }
        return result;
    }

    // pt < 2s: the adjoint family, or an outright integrability failure when
    // s - q(s - t) <= 0.
    if (!adjoint_integrable(params)) {
        Witness w;
        w.family = WitnessFamily::AdjointFxK;
        w.x = opts.x_min;
        w.k = 0;
        w.ratio = kInf;
        w.divergent = true;
        result.kind = Classification::Kind::Unbounded;
        result.witness = w;
        return result;
    }
    const auto hit = grid_search(opts, [&](double x) { return adjoint_log_ratio(params, x, n); });
    if (hit) {
        Witness w;
        w.family = WitnessFamily::AdjointFxK;
        w.x = hit->x;
        w.k = hit->k;
        w.ratio = std::exp(hit->log_ratio);
        result.kind = Classification::Kind::Unbounded;
        result.witness = w;
    } else {
        result.kind = Classification::Kind::Inconclusive;
    }
    return result;
}

ReductionAB reduce_ab(double a, double b, double s, double p) {
    if (!(a > 0.0) || !(b > 0.0) || !(s > 0.0)) {
        throw std::invalid_argument("reduce_ab: a, b, s must be positive");
    }
    if (!(p >= 1.0)) throw std::invalid_argument("reduce_ab: p must be >= 1");
    ReductionAB out;
    out.t_prime = a + b;
    out.s_prime = s + p * a;
    out.threshold_holds =
        std::abs(p * out.t_prime - 2.0 * out.s_prime) <= kThresholdRelTol * p * out.t_prime;
    return out;
}

double lower_bound_S_random(double t, double p, int trials, unsigned seed) {
    if (trials < 1) throw std::invalid_argument("lower_bound_S_random: need at least one trial");
    if (!(t > 0.0) || !(p >= 1.0)) throw std::invalid_argument("lower_bound_S_random: bad parameters");
    const double s = p * t / 2.0;

    // Small grids keep the O(nodes^2) operator application cheap; this is an
    // exploratory estimate, not a certified bound.
    const QuadratureRule rule = build_rule(1, t, 1e-8, RuleOptions{.radial_nodes = 96, .angular_nodes = 48});
    const QuadratureRule rule_s = build_rule(1, s, 1e-8, RuleOptions{.radial_nodes = 96, .angular_nodes = 48,
                                                                     .radius = rule.radius()});
    const OperatorSpec spec = make_operator(OperatorKind::S, t, s, 1);

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double best = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        // Random trial function: polynomial with random phases times a
        // Gaussian envelope, sampled on both grids.
        const int deg = 2 + static_cast<int>(unif(rng) * 5.0);
        const double decay = 0.1 + 0.8 * unif(rng);
        std::vector<Cpx> coeff(static_cast<std::size_t>(deg) + 1);
        for (Cpx& c : coeff) {
            const double phase = 2.0 * kPi * unif(rng);
            c = std::polar(unif(rng), phase);
        }
        auto trial_fn = [&](Cpx w) {
            Cpx acc{};
            Cpx pw = 1.0;
            for (const Cpx& c : coeff) {
                acc += c * pw;
                pw *= w;
            }
            return acc * std::exp(-decay * std::norm(w));
        };

        const GridFunction f_t = sample(rule, [&](std::span<const Cpx> w) { return trial_fn(w[0]); });
        const GridFunction f_s = sample(rule_s, [&](std::span<const Cpx> w) { return trial_fn(w[0]); });
        const GridFunction sf = sample(rule_s, [&](std::span<const Cpx> z) {
            return apply_S(spec, f_t, z, rule);
        });
        const double denom = lp_norm(f_s, p, s, rule_s);
        if (denom <= 0.0) continue;
        best = std::max(best, lp_norm(sf, p, s, rule_s) / denom);
    }
    return best;
}

} // namespace focklab
