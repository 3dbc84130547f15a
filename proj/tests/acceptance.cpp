// Acceptance suite: one line per criterion, nonzero exit if any fails.
// argv[1] (optional, supplied by ctest) is the path of the CLI binary used
// by the determinism checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "focklab/asymptotics.hpp"
#include "focklab/kernel.hpp"
#include "focklab/measure.hpp"
#include "focklab/norms.hpp"
#include "focklab/operators.hpp"

using namespace focklab;

namespace {

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int index, const std::string& name, double budget_s,
                   const std::function<Outcome()>& body) {
    const double t0 = now_s();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double dt = now_s() - t0;
    if (budget_s > 0.0 && dt > budget_s) {
        out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string("runtime over budget");
    }
    if (!out.pass) ++g_failures;
    std::printf("criterion %2d  %-28s  %s  (%.2f s)%s%s\n", index, name.c_str(),
                out.pass ? "PASS" : "FAIL", dt, out.detail.empty() ? "" : "  ",
                out.detail.c_str());
    std::fflush(stdout);
}

Cpx powc(Cpx z, int k) {
    Cpx acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= z;
    return acc;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// ------------------------------------------------------------------------

Outcome moment_identity() {
    Outcome out;
    double worst1 = 0.0, worst2 = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const QuadratureRule rule = build_rule(1, t, 1e-10);
        const GaussianMeasure mu = make_measure(1, t);
        for (int m = 0; m <= 6; ++m) {
            for (double p : {1.0, 2.0, 3.0, 4.0}) {
                const GridFunction f = sample(rule, [&](std::span<const Cpx> z) {
                    return Cpx(std::pow(std::abs(z[0]), p * m), 0.0);
                });
                const double closed = gaussian_monomial_moment(MultiIndex({m}), p, t);
                worst1 = std::max(worst1,
                                  std::abs(integrate(f, mu, rule).real() - closed) / closed);
            }
        }
    }
    for (double t : {0.5, 1.0, 2.0}) {
        RuleOptions opts;
        opts.radial_nodes = 48;
        opts.angular_nodes = 8; // moment integrands are angularly constant
        const QuadratureRule rule = build_rule(2, t, 1e-8, opts);
        const GaussianMeasure mu = make_measure(2, t);
        for (int m1 = 0; m1 <= 3; ++m1) {
            for (int m2 = 0; m2 <= 3; ++m2) {
                for (double p : {1.0, 2.0, 3.0, 4.0}) {
                    const GridFunction f = sample(rule, [&](std::span<const Cpx> z) {
                        return Cpx(std::pow(std::abs(z[0]), p * m1) *
                                       std::pow(std::abs(z[1]), p * m2),
                                   0.0);
                    });
                    const double closed =
                        gaussian_monomial_moment(MultiIndex({m1, m2}), p, t);
                    worst2 = std::max(
                        worst2, std::abs(integrate(f, mu, rule).real() - closed) / closed);
                }
            }
        }
    }
    out.pass = worst1 <= 1e-8 && worst2 <= 1e-6;
    std::ostringstream os;
    os << "max rel n=1 " << worst1 << ", n=2 " << worst2;
    out.detail = os.str();
    return out;
}

Outcome kernel_integral() {
    Outcome out;
    double worst = 0.0;
    for (double t : {1.0, 2.0}) {
        for (double sigma : {1.0, 2.0, 3.0}) {
            for (double r : {0.5, 1.5, 3.0}) {
                RuleOptions opts;
                opts.growth = sigma * r;
                const QuadratureRule rule = build_rule(1, t, 1e-10, opts);
                const PointCn a{Cpx(0.6 * r, 0.8 * r)};
                const double closed = kernel_abs_integral(a, sigma, t);
                const Cpx quad = integrate_fn(rule, [&](std::span<const Cpx> z) {
                    return Cpx(std::exp(sigma * inner(z, a).real()), 0.0);
                });
                worst = std::max(worst, std::abs(quad.real() - closed) / closed);
            }
        }
    }
    out.pass = worst <= 1e-6;
    std::ostringstream os;
    os << "max rel " << worst;
    out.detail = os.str();
    return out;
}

Outcome reproducing_formula() {
    Outcome out;
    RuleOptions opts;
    opts.growth = 2.0; // t |a| with t = 1, |a| <= 2
    const QuadratureRule rule = build_rule(1, 1.0, 1e-10, opts);
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst = 0.0;
    for (int pt = 0; pt < 20; ++pt) {
        Cpx a_val(unif(rng), unif(rng));
        a_val *= 2.0 / std::max(1.0, std::abs(a_val) * std::sqrt(2.0));
        const PointCn a{a_val};
        for (int deg = 0; deg <= 8; ++deg) {
            MonomialPoly f;
            f.dimension = 1;
            f.terms.push_back({MultiIndex({deg}), Cpx(1.0, 0.0)});
            worst = std::max(worst, reproduce_check(f, a, 1.0, rule));
        }
    }
    out.pass = worst <= 1e-8;
    std::ostringstream os;
    os << "max residual " << worst;
    out.detail = os.str();
    return out;
}

Outcome closed_form_action() {
    Outcome out;
    const double t = 1.0;
    RuleOptions opts;
    opts.growth = t * 2.0;
    const QuadratureRule rule = build_rule(1, t, 1e-10, opts);
    const OperatorSpec spec = make_operator(OperatorKind::S, t, t, 1);
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        for (int k = 0; k <= 6; ++k) {
            const GridFunction f = sample(rule, [&](std::span<const Cpx> w) {
                return std::exp(-x * std::norm(w[0])) * powc(w[0], k);
            });
            for (Cpx z : {Cpx(0.5, 0.0), Cpx(0.8, 0.6), Cpx(-1.4, 0.7), Cpx(2.0, 0.0)}) {
                const PointCn zz{z};
                const Cpx want = std::pow(t / (t + x), 1 + k) * powc(z, k);
                const Cpx got = apply_S(spec, f, zz, rule);
                worst = std::max(worst, std::abs(got - want) / std::abs(want));
            }
        }
    }
    out.pass = worst <= 1e-7;
    std::ostringstream os;
    os << "max rel " << worst;
    out.detail = os.str();
    return out;
}

Outcome radial_correspondence() {
    Outcome out;
    double worst = 0.0;
    const std::vector<std::pair<std::string, std::function<double(double)>>> profiles = {
        {"exp", [](double y) { return std::exp(-y); }},
        {"xexp", [](double y) { return y * std::exp(-y); }}};
    for (double t : {1.0, 2.0}) {
        const double budget = std::log(1e10) + 40.0;
        RuleOptions opts;
        opts.radius = 3.0 + std::sqrt(9.0 + 2.0 * budget / t);
        opts.growth = t * 3.0;
        const QuadratureRule rule = build_rule(1, t, 1e-10, opts);
        const RadialOperatorA A(t, std::max(400.0 / t, opts.radius * opts.radius * 1.02), 2400);
        std::vector<double> g_samples(static_cast<std::size_t>(A.count()));
        for (const auto& [name, G] : profiles) {
            for (int j = 0; j < A.count(); ++j) g_samples[static_cast<std::size_t>(j)] = G(A.node(j));
            for (int i = 1; i <= 10; ++i) {
                const double r = 0.3 * i;
                const double resid = radial_correspondence_check(t, G, Cpx(r, 0.0), rule, A);
                const double right =
                    std::exp(0.5 * t * r * r) * apply_A_at(A, g_samples, r * r);
                worst = std::max(worst, resid / std::abs(right));
            }
        }
    }
    out.pass = worst <= 1e-5;
    std::ostringstream os;
    os << "max rel " << worst;
    out.detail = os.str();
    return out;
}

Outcome norm_sandwich() {
    Outcome out;
    std::ostringstream os;

    const ParamTriple params = make_triple(2.0, 2.0, 2.0);
    const SchurCertificate cert1 = schur_certify(params, 1);
    const bool upper1_ok = std::abs(cert1.bound - 2.0) <= 1e-13;

    const RadialOperatorA A(2.0, 4000.0, 3200);
    const FepsResult fr = lower_bound_feps(2.0, 2.0, 1e-3, A);
    const bool lower1_ok = fr.ratio >= 1.95;

    const RadialOperatorA Apow(2.0, 400.0, 2000);
    const PowerIterationResult pr = lower_bound_power_iteration(Apow);
    const bool power_ok = pr.sigma >= 1.9 && pr.sigma <= 2.001;

    const SchurCertificate cert2 = schur_certify(params, 2);
    const bool upper2_ok = std::abs(cert2.bound - 4.0) <= 1e-13;
    const double lower2 = fr.ratio * fr.ratio; // tensor argument
    const bool lower2_ok = lower2 >= 1.95 * 1.95;

    out.pass = upper1_ok && lower1_ok && power_ok && upper2_ok && lower2_ok;
    os << "upper " << cert1.bound << ", f_eps " << fr.ratio << ", power " << pr.sigma
       << ", n=2 lower " << lower2 << " upper " << cert2.bound;
    out.detail = os.str();
    return out;
}

Outcome limit_criterion() {
    Outcome out;
    std::ostringstream os;
    const double hs[] = {1e-2, 1e-3, 1e-4};
    bool ok = true;
    for (double p : {1.0, 2.0}) {
        const double ref = std::pow(2.0 * std::sqrt(2.0 * kPi), p);
        std::vector<double> estimates;
        for (double c : {0.5, 1.0, 2.0}) {
            estimates.push_back(extrapolate_limit(c, p, hs).estimate);
        }
        const double at_c1 = estimates[1];
        ok = ok && std::abs(at_c1 - ref) / ref <= 0.01;
        for (double e : estimates) ok = ok && std::abs(e - ref) / ref <= 0.02;
        os << "p=" << p << " est " << at_c1 << " ref " << ref << "; ";
    }
    out.pass = ok;
    out.detail = os.str();
    return out;
}

Outcome threshold_dichotomy() {
    Outcome out;
    std::ostringstream os;
    bool ok = true;
    int witnesses = 0, divergent = 0, bounded = 0;
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            const double t = 0.5 + 1.5 * i / 15.0;
            const double s = 0.5 + 1.5 * j / 15.0;
            const ParamTriple params = make_triple(2.0, t, s);
            const bool on = std::abs(params.p * t - 2.0 * s) <= 1e-12 * params.p * t;
            ClassifyOptions dichotomy_only;
            dichotomy_only.attach_lower_bound = false;
            const Classification c = classify(params, 1, dichotomy_only);
            if (on) {
                ok = ok && c.kind == Classification::Kind::Bounded;
                ++bounded;
            } else {
                if (c.kind != Classification::Kind::Unbounded || !c.witness) {
                    ok = false;
                    continue;
                }
                const Witness& w = *c.witness;
                if (w.divergent) {
                    ok = ok && std::isinf(witness_ratio_adjoint_fxk(params, w.x, w.k, 1));
                    ++divergent;
                } else {
                    const double re = w.family == WitnessFamily::FxK
                                          ? witness_ratio_fxk(params, w.x, w.k, 1)
                                          : witness_ratio_adjoint_fxk(params, w.x, w.k, 1);
                    ok = ok && re > 1e3;
                    ++witnesses;
                }
            }
        }
    }
    // p = 1: the growth exponent vanishes exactly on t = 2s.
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            const double t = 0.5 + 1.5 * i / 15.0;
            const double s = 0.5 + 1.5 * j / 15.0;
            const double gamma = p1_growth_exponent(t, s);
            const bool on = std::abs(t - 2.0 * s) <= 1e-12 * t;
            const double tiny = (1e-12 * t) * (1e-12 * t) / (4.0 * s);
            ok = ok && ((gamma <= tiny) == on);
        }
    }
    out.pass = ok;
    os << bounded << " bounded, " << witnesses << " finite witnesses, " << divergent
       << " divergent";
    out.detail = os.str();
    return out;
}

Outcome reduction_agreement() {
    Outcome out;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        double a, b, s;
        const double p = 1.0 + 3.0 * unif(rng);
        if (trial % 2 == 0) {
            a = 0.05 * std::pow(100.0, unif(rng));
            b = 0.05 * std::pow(100.0, unif(rng));
            s = 0.05 * std::pow(100.0, unif(rng));
        } else {
            // Constructed to satisfy p(a+b) = 2(s + pa).
            a = 0.05 + 2.0 * unif(rng);
            const double delta = 0.1 + 3.0 * unif(rng);
            b = a + delta;
            s = p * delta / 2.0;
        }
        const ReductionAB red = reduce_ab(a, b, s, p);
        ClassifyOptions dichotomy_only;
        dichotomy_only.attach_lower_bound = false;
        const Classification c =
            classify(make_triple(p, red.t_prime, red.s_prime), 1, dichotomy_only);
        const bool bounded = c.kind == Classification::Kind::Bounded;
        if (red.threshold_holds != bounded) {
            ok = false;
            std::fprintf(stderr, "  mismatch at a=%g b=%g s=%g p=%g\n", a, b, s, p);
        }
    }
    out.pass = ok;
    out.detail = "100 random quadruples";
    return out;
}

Outcome property_suites(const std::string& cli_path) {
    Outcome out;
    std::ostringstream os;
    bool ok = true;

    { // positivity of T
        RuleOptions o;
        o.radial_nodes = 96;
        o.angular_nodes = 48;
        o.growth = 2.0;
        const QuadratureRule rule = build_rule(1, 1.0, 1e-8, o);
        const OperatorSpec spec = make_operator(OperatorKind::T, 1.0, 1.0, 1);
        std::mt19937 rng(55);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const GridFunction f = sample(rule, [&](std::span<const Cpx> w) {
            return Cpx(unif(rng) * std::exp(-0.3 * std::norm(w[0])), 0.0);
        });
        for (Cpx z : {Cpx(0.0, 0.0), Cpx(1.0, -0.8)}) {
            const PointCn zz{z};
            ok = ok && apply_T(spec, f, zz, rule).real() >= 0.0;
        }
    }
    { // positivity of A
        const RadialOperatorA A(1.5, 100.0, 300);
        std::vector<double> g(static_cast<std::size_t>(A.count()));
        for (int j = 0; j < A.count(); ++j) {
            g[static_cast<std::size_t>(j)] = std::abs(std::sin(A.node(j))) * std::exp(-A.node(j));
        }
        for (double v : apply_A(A, g).values) ok = ok && v >= 0.0;
    }
    { // Hermitian kernel symmetry
        const KernelParams kp = make_kernel(1.3, 2);
        std::mt19937 rng(66);
        std::uniform_real_distribution<double> unif(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            PointCn z{Cpx(unif(rng), unif(rng)), Cpx(unif(rng), unif(rng))};
            PointCn w{Cpx(unif(rng), unif(rng)), Cpx(unif(rng), unif(rng))};
            const Cpx zw = eval_kernel(kp, z, w);
            ok = ok && std::abs(zw - std::conj(eval_kernel(kp, w, z))) <= 1e-12 * std::abs(zw);
        }
    }
    { // pointwise domination
        RuleOptions o;
        o.radial_nodes = 96;
        o.angular_nodes = 48;
        o.growth = 2.0;
        const QuadratureRule rule = build_rule(1, 1.0, 1e-8, o);
        const OperatorSpec sspec = make_operator(OperatorKind::S, 1.0, 1.0, 1);
        const OperatorSpec tspec = make_operator(OperatorKind::T, 1.0, 1.0, 1);
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int trial = 0; trial < 4; ++trial) {
            const Cpx c0(unif(rng), unif(rng)), c1(unif(rng), unif(rng));
            const GridFunction f = sample(rule, [&](std::span<const Cpx> w) {
                return (c0 + c1 * w[0]) * std::exp(-0.5 * std::norm(w[0]));
            });
            GridFunction af = f;
            for (Cpx& v : af.values()) v = std::abs(v);
            for (Cpx z : {Cpx(0.3, 0.3), Cpx(-1.0, 0.6)}) {
                const PointCn zz{z};
                ok = ok && std::abs(apply_S(sspec, f, zz, rule)) <=
                               apply_T(tspec, af, zz, rule).real() * (1.0 + 1e-12) + 1e-12;
            }
        }
    }
    { // witness soundness re-evaluation
        for (auto [p, t, s] : {std::tuple{2.0, 1.0, 0.8}, {2.0, 1.0, 1.2}, {3.0, 1.0, 1.2}}) {
            const ParamTriple params = make_triple(p, t, s);
            ClassifyOptions dichotomy_only;
            dichotomy_only.attach_lower_bound = false;
            const Classification c = classify(params, 1, dichotomy_only);
            if (c.kind != Classification::Kind::Unbounded || !c.witness) {
                ok = false;
                continue;
            }
            const Witness& w = *c.witness;
            if (w.family == WitnessFamily::P1Exponent) {
                ok = ok && w.gamma > 0.0;
            } else if (w.divergent) {
                ok = ok && std::isinf(w.ratio);
            } else {
                const double re = w.family == WitnessFamily::FxK
                                      ? witness_ratio_fxk(params, w.x, w.k, 1)
                                      : witness_ratio_adjoint_fxk(params, w.x, w.k, 1);
                ok = ok && re > 1e3;
            }
        }
    }

    bool cli_ok = false;
    if (!cli_path.empty() && std::filesystem::exists(cli_path)) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "focklab_acceptance";
        fs::create_directories(dir);
        const auto run_pair = [&](const std::string& args, const std::string& stem,
                                  const char* flag, const char* ext) {
            const fs::path p1 = dir / (stem + std::string("_1") + ext);
            const fs::path p2 = dir / (stem + std::string("_2") + ext);
            const std::string base = "\"" + cli_path + "\" " + args + " ";
            const int r1 = std::system(
                (base + flag + " \"" + p1.string() + "\" >/dev/null 2>&1").c_str());
            const int r2 = std::system(
                (base + flag + " \"" + p2.string() + "\" >/dev/null 2>&1").c_str());
            return r1 == 0 && r2 == 0 && !slurp(p1).empty() && slurp(p1) == slurp(p2);
        };
        cli_ok = run_pair("norm-estimate --p 2 --t 2 --s 2 --n 1 --eps-list 1e-1,3e-2,1e-2 "
                          "--xmax 800 --nodes 800 --power-nodes 600",
                          "ne", "--json", ".json") &&
                 run_pair("threshold-scan --p 2 --t-range 0.5:2:6 --s-range 0.5:2:6", "scan",
                          "--csv", ".csv");
    }
    ok = ok && cli_ok;

    out.pass = ok;
    os << "properties " << (ok ? "hold" : "violated") << "; CLI reruns "
       << (cli_ok ? "byte-identical" : "FAILED");
    out.detail = os.str();
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    run_criterion(1, "moment-identity", 5.0, moment_identity);
    run_criterion(2, "kernel-integral", 5.0, kernel_integral);
    run_criterion(3, "reproducing-formula", 5.0, reproducing_formula);
    run_criterion(4, "closed-form-action", 0.0, closed_form_action);
    run_criterion(5, "radial-correspondence", 0.0, radial_correspondence);
    run_criterion(6, "norm-sandwich", 60.0, norm_sandwich);
    run_criterion(7, "sharp-limit", 120.0, limit_criterion);
    run_criterion(8, "threshold-dichotomy", 0.0, threshold_dichotomy);
    run_criterion(9, "reduction-agreement", 0.0, reduction_agreement);
    run_criterion(10, "property-suites", 0.0, [&] { return property_suites(cli_path); });

    if (g_failures == 0) {
        std::printf("acceptance: all criteria PASS\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
