#include "focklab/cli.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "focklab/asymptotics.hpp"
#include "focklab/kernel.hpp"
#include "focklab/measure.hpp"
#include "focklab/norms.hpp"
#include "focklab/operators.hpp"
#include "focklab/output.hpp"

namespace focklab {

namespace {

// Relative paths land in $FOCKLAB_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    const char* dir = std::getenv("FOCKLAB_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    return (std::filesystem::path(dir) / p).string();
}

std::string fd(double v) { return format_double(v); }

const char* family_name(WitnessFamily f) {
    switch (f) {
        case WitnessFamily::FxK: return "f_xk";
        case WitnessFamily::AdjointFxK: return "adjoint_f_xk";
        case WitnessFamily::P1Exponent: return "p1_exponent";
    }
    return "unknown";
}

const char* class_name(Classification::Kind k) {
    switch (k) {
        case Classification::Kind::Bounded: return "bounded";
        case Classification::Kind::Unbounded: return "unbounded";
        case Classification::Kind::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct CommonOut {
    std::string csv_path;
    std::string json_path;
    std::string plot_path;
    bool with_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOut& out, bool plot) {
    cmd->add_option("--csv", out.csv_path, "CSV output path");
    cmd->add_option("--json", out.json_path, "JSON output path");
    if (plot) cmd->add_option("--plot", out.plot_path, "SVG plot output path");
    cmd->add_flag("--timestamp", out.with_timestamp, "embed a timestamp in the metadata");
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
    int n = 1;
    double t = 1.0;
    double tol = 0.0; // 0: pick per dimension
    int max_order = -1;
    std::string p_list = "1,2,3,4";
    int radial = 0, angular = 0;
    CommonOut out;
};

int cmd_moments(const MomentsArgs& a) {
    const double tol = a.tol > 0.0 ? a.tol : (a.n == 1 ? 1e-10 : 1e-8);
    const int max_order = a.max_order >= 0 ? a.max_order : (a.n == 1 ? 6 : 3);
    const std::vector<double> ps = parse_list(a.p_list);
    for (double p : ps) {
        if (!(p > 0.0)) throw std::invalid_argument("moments: p values must be positive");
    }
    const GaussianMeasure mu = make_measure(a.n, a.t);

    RuleOptions opts;
    opts.radial_nodes = a.radial;
    opts.angular_nodes = a.angular;
    if (a.n == 2 && a.radial == 0) {
        // Moments are angularly constant; a compact tensor grid is exact.
        opts.radial_nodes = 64;
        opts.angular_nodes = 16;
    }
    const QuadratureRule rule = build_rule(a.n, a.t, tol, opts);

    CsvWriter csv;
    csv.meta("tool", std::string(kToolName) + " v" + kToolVersion);
    csv.meta("experiment", "moments");
    csv.meta("n", fd(a.n));
    csv.meta("t", fd(a.t));
    csv.meta("tol", fd(tol));
    csv.header({"m1", "m2", "p", "closed_form", "quadrature", "rel_error"});

    Json rows = Json::array();
    double worst = 0.0;
    std::vector<MultiIndex> ms;
    if (a.n == 1) {
        for (int m = 0; m <= max_order; ++m) ms.push_back(MultiIndex({m}));
    } else {
        for (int m1 = 0; m1 <= max_order; ++m1)
            for (int m2 = 0; m2 <= max_order; ++m2) ms.push_back(MultiIndex({m1, m2}));
    }
    for (const MultiIndex& m : ms) {
        const GridFunction f = sample(rule, [&](std::span<const Cpx> z) {
            double v = 1.0;
            for (std::size_t k = 0; k < z.size(); ++k) {
                v *= std::pow(std::abs(z[k]), m.entries[k]);
            }
            return Cpx(v, 0.0);
        });
        for (double p : ps) {
            // |z^m|^p sampled as (|z^m|)^p to reuse the grid per exponent.
            GridFunction fp = f;
            for (Cpx& v : fp.values()) v = std::pow(v.real(), p);
            const double closed = gaussian_monomial_moment(m, p, a.t);
            const double quad = integrate(fp, mu, rule).real();
            const double rel = std::abs(quad - closed) / closed;
            worst = std::max(worst, rel);
            csv.row({fd(m.entries[0]), a.n == 2 ? fd(m.entries[1]) : "", fd(p), fd(closed),
                     fd(quad), fd(rel)});
            Json r;
            r["m"] = m.entries;
            r["p"] = p;
            r["closed_form"] = closed;
            r["quadrature"] = quad;
            r["rel_error"] = rel;
            rows.push_back(std::move(r));
        }
    }

    if (!a.out.csv_path.empty() || a.out.json_path.empty()) {
        write_text_file(resolve_out(a.out.csv_path.empty() ? "moments.csv" : a.out.csv_path),
                        csv.str());
    }
    if (!a.out.json_path.empty()) {
        Json inputs{{"n", a.n}, {"t", a.t}, {"tol", tol}, {"max_order", max_order}, {"p_list", ps}};
        Json results{{"rows", rows}, {"max_rel_error", worst}};
        write_text_file(resolve_out(a.out.json_path),
                        make_record("moments", inputs, results, a.out.with_timestamp).dump(2) + "\n");
    }
    std::cout << "moments: " << rows.size() << " cases, max rel error " << fd(worst) << "\n";
    if (worst > 10.0 * tol) throw convergence_error("moments: worst relative error exceeds 10*tol");
    return 0;
}

// ---------------------------------------------------- verify-reproducing

struct ReproArgs {
    int n = 1;
    double t = 1.0;
    int degree = 8;
    int points = 20;
    unsigned seed = 20240901;
    double radius = 2.0;
    CommonOut out;
};

int cmd_verify_reproducing(const ReproArgs& a) {
    if (a.degree < 0 || a.degree > 10) {
        throw std::invalid_argument("verify-reproducing: degree must be in [0, 10]");
    }
    if (a.points < 1) throw std::invalid_argument("verify-reproducing: need at least one point");
    if (!(a.radius > 0.0)) throw std::invalid_argument("verify-reproducing: radius must be positive");

    RuleOptions opts;
    opts.growth = a.t * a.radius;
    if (a.n == 2) {
        opts.radial_nodes = 96;
        opts.angular_nodes = 48;
    }
    const QuadratureRule rule = build_rule(a.n, a.t, a.n == 1 ? 1e-10 : 1e-8, opts);

    std::mt19937 rng(a.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    CsvWriter csv;
    csv.meta("tool", std::string(kToolName) + " v" + kToolVersion);
    csv.meta("experiment", "verify-reproducing");
    csv.meta("t", fd(a.t));
    csv.meta("n", fd(a.n));
    csv.header({"degree", "a_re", "a_im", "residual", "bound"});

    double worst = 0.0;
    for (int pt = 0; pt < a.points; ++pt) {
        PointCn z(static_cast<std::size_t>(a.n));
        for (auto& zk : z) {
            zk = a.radius / std::sqrt(2.0 * a.n) * Cpx(unif(rng), unif(rng));
        }
        for (int deg = 0; deg <= a.degree; ++deg) {
            MonomialPoly f;
            f.dimension = a.n;
            std::vector<int> m(static_cast<std::size_t>(a.n), 0);
            m[0] = deg;
            f.terms.push_back({MultiIndex(m), Cpx(1.0, 0.0)});
            const double residual = reproduce_check(f, z, a.t, rule);
            const double bound = 10.0 * rule.tolerance() * (1.0 + std::abs(f.eval(z)));
            worst = std::max(worst, residual / bound);
            csv.row({fd(deg), fd(z[0].real()), fd(z[0].imag()), fd(residual), fd(bound)});
        }
    }

    write_text_file(
        resolve_out(a.out.csv_path.empty() ? "verify_reproducing.csv" : a.out.csv_path), csv.str());
    std::cout << "verify-reproducing: worst residual/bound = " << fd(worst) << "\n";
    if (worst > 1.0) throw convergence_error("verify-reproducing: residual contract violated");
    return 0;
}

// ------------------------------------------------------------ schur-bound

struct SchurArgs {
    double p = 2.0, t = 2.0, s = 2.0;
    int n = 1;
    CommonOut out;
};

int cmd_schur_bound(const SchurArgs& a) {
    const ParamTriple params = make_triple(a.p, a.t, a.s);
    const SchurCertificate cert = schur_certify(params, a.n);

    double worst = 0.0;
    for (double r : cert.residual_first) worst = std::max(worst, r);
    for (double r : cert.residual_second) worst = std::max(worst, r);

    Json inputs{{"p", a.p}, {"t", a.t}, {"s", a.s}, {"n", a.n}};
    Json results;
    results["lambda"] = cert.lambda;
    results["c1"] = cert.c1;
    results["c2"] = cert.c2;
    results["bound"] = cert.bound;
    results["residual_first"] = cert.residual_first;
    results["residual_second"] = cert.residual_second;
    results["max_residual"] = worst;
    write_text_file(resolve_out(a.out.json_path.empty() ? "schur_bound.json" : a.out.json_path),
                    make_record("schur-bound", inputs, results, a.out.with_timestamp).dump(2) + "\n");
    std::cout << "schur-bound: lambda=" << fd(cert.lambda) << " bound=" << fd(cert.bound)
              << " max residual " << fd(worst) << "\n";
    return 0;
}

// ---------------------------------------------------------- norm-estimate

struct NormArgs {
    double p = 2.0, t = 2.0, s = 2.0;
    int n = 1;
    std::string eps_list = "1e-1,1e-2,1e-3";
    double x_max = 4000.0;
    int nodes = 3200;
    double power_x_max = 0.0; // 0: 800/t
    int power_nodes = 2000;
    int s_lower_trials = 0;
    CommonOut out;
};

int cmd_norm_estimate(const NormArgs& a) {
    const ParamTriple params = make_triple(a.p, a.t, a.s);
    if (!at_threshold(params)) {
        throw std::invalid_argument(
            "norm-estimate: pt != 2s, the operator is unbounded; use threshold-scan");
    }
    const std::vector<double> eps = parse_list(a.eps_list);

    const double upper1 = 2.0;
    const double upper = std::pow(upper1, a.n);
    std::string upper_method = "fubini";
    if (params.p > 1.0) {
        schur_certify(params, a.n);
        upper_method = "schur";
    }

    const RadialOperatorA A(a.t, a.x_max, a.nodes);
    Json feps_rows = Json::array();
    std::vector<std::pair<double, double>> curve;
    double best_ratio = 0.0;
    for (double e : eps) {
        const FepsResult fr = lower_bound_feps(a.t, a.p, e, A);
        best_ratio = std::max(best_ratio, fr.ratio);
        curve.emplace_back(std::log10(e), fr.ratio);
        Json r;
        r["eps"] = e;
        r["ratio"] = fr.ratio;
        r["tail_fraction"] = fr.tail_fraction;
        r["truncation_adequate"] = fr.truncation_adequate;
        feps_rows.push_back(std::move(r));
    }

    Json results;
    results["upper"] = upper;
    results["upper_method"] = upper_method;
    results["f_eps"] = feps_rows;
    const double lower = std::pow(best_ratio, a.n);
    results["lower"] = lower;
    Json methods = Json::array({"f_eps"});
    if (a.n > 1) methods.push_back("tensor");

    if (std::abs(a.p - 2.0) <= 1e-12) {
        const double px = a.power_x_max > 0.0 ? a.power_x_max : 800.0 / a.t;
        const RadialOperatorA Apow(a.t, px, a.power_nodes);
        const PowerIterationResult pr = lower_bound_power_iteration(Apow);
        Json pj;
        pj["sigma"] = pr.sigma;
        pj["iterations"] = pr.iterations;
        pj["converged"] = pr.converged;
        pj["x_max"] = px;
        pj["nodes"] = a.power_nodes;
        results["power_iteration"] = pj;
        methods.push_back("power_iteration");
    }
    results["lower_methods"] = methods;

    if (a.s_lower_trials > 0) {
        results["s_lower_random"] = lower_bound_S_random(a.t, a.p, a.s_lower_trials, 7u);
        results["s_lower_note"] = "exploratory lower bound for the analytic-kernel operator; "
                                  "no convergence claim";
    }

    Json inputs{{"p", a.p}, {"t", a.t}, {"s", a.s}, {"n", a.n},
                {"eps_list", eps}, {"x_max", a.x_max}, {"nodes", a.nodes}};
    write_text_file(resolve_out(a.out.json_path.empty() ? "norm_estimate.json" : a.out.json_path),
                    make_record("norm-estimate", inputs, results, a.out.with_timestamp).dump(2) + "\n");

    if (!a.out.plot_path.empty()) {
        PlotSeries s;
        s.label = "eps family ratio";
        s.color = "#1f77b4";
        s.points = curve;
        write_text_file(resolve_out(a.out.plot_path),
                        line_chart_svg("norm lower bounds, n=" + std::to_string(a.n),
                                       "log10(eps)", "ratio", {s}, upper1, true));
    }
    std::cout << "norm-estimate: lower " << fd(lower) << " upper " << fd(upper) << " (p=" << fd(a.p)
              << " t=" << fd(a.t) << " s=" << fd(a.s) << " n=" << a.n << ")\n";
    return 0;
}

// ---------------------------------------------------------- threshold-scan

struct ScanArgs {
    double p = 2.0;
    std::string t_range = "0.5:2:16";
    std::string s_range = "0.5:2:16";
    int n = 1;
    bool attach_lower = false;
    CommonOut out;
};

int cmd_threshold_scan(const ScanArgs& a) {
    const std::vector<double> ts = parse_range(a.t_range);
    const std::vector<double> ss = parse_range(a.s_range);

    ClassifyOptions opts;
    opts.attach_lower_bound = a.attach_lower;

    CsvWriter csv;
    csv.meta("tool", std::string(kToolName) + " v" + kToolVersion);
    csv.meta("experiment", "threshold-scan");
    csv.meta("p", fd(a.p));
    csv.meta("n", fd(a.n));
    csv.header({"t", "s", "class", "witness_family", "witness_x", "witness_k", "witness_ratio",
                "gamma", "lower", "upper"});

    std::vector<int> cells;
    cells.reserve(ts.size() * ss.size());
    for (double s : ss) {
        for (double t : ts) {
            const Classification c = classify(make_triple(a.p, t, s), a.n, opts);
            int code = 3;
            std::array<std::string, 7> cols = {"", "", "", "", "", "", ""};
            if (c.kind == Classification::Kind::Bounded) {
                code = 0;
                cols[5] = fd(c.estimate->lower);
                cols[6] = fd(c.estimate->upper);
            } else if (c.kind == Classification::Kind::Unbounded) {
                const Witness& w = *c.witness;
                code = w.divergent ? 2 : 1;
                cols[0] = family_name(w.family);
                if (w.family == WitnessFamily::P1Exponent) {
                    cols[4] = fd(w.gamma);
                } else {
                    cols[1] = fd(w.x);
                    cols[2] = fd(w.k);
                    cols[3] = fd(w.ratio);
                }
            }
            csv.row({fd(t), fd(s), class_name(c.kind), cols[0], cols[1], cols[2], cols[3], cols[4],
                     cols[5], cols[6]});
            cells.push_back(code);
        }
    }

    write_text_file(resolve_out(a.out.csv_path.empty() ? "threshold_scan.csv" : a.out.csv_path),
                    csv.str());

    if (!a.out.plot_path.empty()) {
        HeatmapSpec spec;
        spec.title = "boundedness over (t, s), p=" + fd(a.p);
        spec.x_label = "t";
        spec.y_label = "s";
        spec.xs = ts;
        spec.ys = ss;
        spec.cells = cells;
        spec.legend = {{"bounded", "#2ca02c"},
                       {"unbounded", "#d62728"},
                       {"divergent", "#7f1d1d"},
                       {"inconclusive", "#9e9e9e"}};
        // The threshold line s = p t / 2 in data coordinates.
        spec.with_line = true;
        spec.line_a = {ts.front(), a.p * ts.front() / 2.0};
        spec.line_b = {ts.back(), a.p * ts.back() / 2.0};
        write_text_file(resolve_out(a.out.plot_path), heatmap_svg(spec));
    }
    std::cout << "threshold-scan: " << ts.size() << "x" << ss.size() << " grid written\n";
    return 0;
}

// ---------------------------------------------------------- lemma13-limit

struct LimitArgs {
    double c = 1.0;
    double p = 2.0;
    std::string h_list = "1e-2,1e-3,1e-4";
    CommonOut out;
};

int cmd_limit(const LimitArgs& a) {
    const std::vector<double> hs = parse_list(a.h_list);
    const LimitEstimate est = extrapolate_limit(a.c, a.p, hs);
    const double reference = std::pow(2.0 * std::sqrt(2.0 * kPi), a.p);

    Json rows = Json::array();
    for (std::size_t i = 0; i < est.values.size(); ++i) {
        rows.push_back(Json{{"h", est.h_values[i]}, {"value", est.values[i]}});
    }
    Json inputs{{"c", a.c}, {"p", a.p}, {"h_list", hs}};
    Json results;
    results["table"] = rows;
    results["estimate"] = est.estimate;
    results["monotone_tail"] = est.monotone_tail;
    results["reference_limit"] = reference;
    results["rel_deviation"] = std::abs(est.estimate - reference) / reference;
    write_text_file(resolve_out(a.out.json_path.empty() ? "limit.json" : a.out.json_path),
                    make_record("lemma13-limit", inputs, results, a.out.with_timestamp).dump(2) + "\n");
    std::cout << "lemma13-limit: estimate " << fd(est.estimate) << " reference " << fd(reference)
              << (est.monotone_tail ? "" : " [non-monotone tail]") << "\n";
    return 0;
}

// -------------------------------------------------------------- reduce-ab

struct ReduceArgs {
    double a = 1.0, b = 3.0, s = 1.0, p = 1.0;
    int n = 1;
    CommonOut out;
};

int cmd_reduce_ab(const ReduceArgs& a) {
    const ReductionAB red = reduce_ab(a.a, a.b, a.s, a.p);
    const Classification c = classify(make_triple(a.p, red.t_prime, red.s_prime), a.n);

    Json inputs{{"a", a.a}, {"b", a.b}, {"s", a.s}, {"p", a.p}, {"n", a.n}};
    Json results;
    results["t_prime"] = red.t_prime;
    results["s_prime"] = red.s_prime;
    results["threshold_holds"] = red.threshold_holds;
    results["classification"] = class_name(c.kind);
    if (c.witness) {
        Json w;
        w["family"] = family_name(c.witness->family);
        w["x"] = c.witness->x;
        w["k"] = c.witness->k;
        w["ratio"] = c.witness->ratio;
        w["gamma"] = c.witness->gamma;
        w["divergent"] = c.witness->divergent;
        results["witness"] = w;
    }
    if (c.estimate) {
        results["upper"] = c.estimate->upper;
        results["lower"] = c.estimate->lower;
    }
    write_text_file(resolve_out(a.out.json_path.empty() ? "reduce_ab.json" : a.out.json_path),
                    make_record("reduce-ab", inputs, results, a.out.with_timestamp).dump(2) + "\n");
    std::cout << "reduce-ab: t'=" << fd(red.t_prime) << " s'=" << fd(red.s_prime) << " condition "
              << (red.threshold_holds ? "true" : "false") << ", classification "
              << class_name(c.kind) << "\n";
    return 0;
}

// ------------------------------------------------------------ radial-check

struct RadialArgs {
    double t = 2.0;
    std::string g = "exp";
    std::string radii = "0.3:3:10";
    double tol = 1e-10;
    CommonOut out;
};

int cmd_radial_check(const RadialArgs& a) {
    const std::vector<double> radii = parse_range(a.radii);
    std::function<double(double)> G;
    if (a.g == "exp") {
        G = [](double y) { return std::exp(-y); };
    } else if (a.g == "xexp") {
        G = [](double y) { return y * std::exp(-y); };
    } else {
        throw std::invalid_argument("radial-check: --g must be 'exp' or 'xexp'");
    }

    double rmax = 0.0;
    for (double r : radii) rmax = std::max(rmax, r);
    const double budget = std::log(1.0 / a.tol) + 40.0;
    RuleOptions opts;
    // The profile carries e^{t|w|^2/2}, so the effective Gaussian decay is
    // t/2 and the kernel adds e^{t |z| r}.
    opts.radius = rmax + std::sqrt(rmax * rmax + 2.0 * budget / a.t);
    opts.growth = a.t * rmax;
    const QuadratureRule rule = build_rule(1, a.t, a.tol, opts);
    const double x_needed = rule.radius() * rule.radius();
    const RadialOperatorA A(a.t, std::max(400.0 / a.t, x_needed * 1.02), 2400);

    CsvWriter csv;
    csv.meta("tool", std::string(kToolName) + " v" + kToolVersion);
    csv.meta("experiment", "radial-check");
    csv.meta("t", fd(a.t));
    csv.meta("g", a.g);
    csv.header({"radius", "abs_residual", "rel_residual"});

    double worst = 0.0;
    for (double r : radii) {
        const Cpx z(r, 0.0);
        const double resid = radial_correspondence_check(a.t, G, z, rule, A);
        std::vector<double> g_samples(static_cast<std::size_t>(A.count()));
        for (int j = 0; j < A.count(); ++j) g_samples[static_cast<std::size_t>(j)] = G(A.node(j));
        const double right = std::exp(0.5 * a.t * r * r) * apply_A_at(A, g_samples, r * r);
        const double rel = resid / std::abs(right);
        worst = std::max(worst, rel);
        csv.row({fd(r), fd(resid), fd(rel)});
    }

    write_text_file(resolve_out(a.out.csv_path.empty() ? "radial_check.csv" : a.out.csv_path),
                    csv.str());
    std::cout << "radial-check: worst rel residual " << fd(worst) << "\n";
    if (worst > 1e-5) throw convergence_error("radial-check: residual exceeds contract 1e-5");
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"focklab: integral operators induced by the Fock kernel on L^p(C^n, dv_s) -- "
                 "closed forms, quadrature, norm certificates, unboundedness witnesses"};
    app.require_subcommand(1);

    MomentsArgs ma;
    auto* moments = app.add_subcommand("moments", "Gaussian monomial moments: quadrature vs closed form");
    moments->add_option("--n", ma.n, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    moments->add_option("--t", ma.t, "measure scale")->check(CLI::PositiveNumber);
    moments->add_option("--tol", ma.tol, "rule tolerance");
    moments->add_option("--max-order", ma.max_order, "max monomial order per coordinate");
    moments->add_option("--p-list", ma.p_list, "comma-separated exponents");
    moments->add_option("--radial", ma.radial, "radial node override");
    moments->add_option("--angular", ma.angular, "angular node override");
    add_common(moments, ma.out, false);

    ReproArgs ra;
    auto* repro = app.add_subcommand("verify-reproducing", "reproducing formula residuals on monomials");
    repro->add_option("--n", ra.n, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    repro->add_option("--t", ra.t, "kernel/measure scale")->check(CLI::PositiveNumber);
    repro->add_option("--degree", ra.degree, "max monomial degree");
    repro->add_option("--points", ra.points, "number of random evaluation points");
    repro->add_option("--seed", ra.seed, "RNG seed");
    repro->add_option("--radius", ra.radius, "max |a| of evaluation points")->check(CLI::PositiveNumber);
    add_common(repro, ra.out, false);

    SchurArgs sa;
    auto* schur = app.add_subcommand("schur-bound", "closed-form Schur certificate for the bound 2^n");
    schur->add_option("--p", sa.p, "exponent")->required();
    schur->add_option("--t", sa.t, "kernel scale")->required()->check(CLI::PositiveNumber);
    schur->add_option("--s", sa.s, "measure scale")->required()->check(CLI::PositiveNumber);
    schur->add_option("--n", sa.n, "dimension")->check(CLI::PositiveNumber);
    add_common(schur, sa.out, false);

    NormArgs na;
    auto* norm = app.add_subcommand("norm-estimate", "certified upper bound and family lower bounds");
    norm->add_option("--p", na.p, "exponent")->required();
    norm->add_option("--t", na.t, "kernel scale")->required()->check(CLI::PositiveNumber);
    norm->add_option("--s", na.s, "measure scale")->required()->check(CLI::PositiveNumber);
    norm->add_option("--n", na.n, "dimension")->check(CLI::PositiveNumber);
    norm->add_option("--eps-list", na.eps_list, "eps family parameters");
    norm->add_option("--xmax", na.x_max, "1D domain truncation")->check(CLI::PositiveNumber);
    norm->add_option("--nodes", na.nodes, "1D rule node count")->check(CLI::PositiveNumber);
    norm->add_option("--power-xmax", na.power_x_max, "power-iteration domain (default 800/t)");
    norm->add_option("--power-nodes", na.power_nodes, "power-iteration node count");
    norm->add_option("--s-lower-trials", na.s_lower_trials,
                     "random-phase trials for the analytic-kernel operator (0 = skip)");
    add_common(norm, na.out, true);

    ScanArgs ga;
    auto* scan = app.add_subcommand("threshold-scan", "classify boundedness over a (t, s) grid");
    scan->add_option("--p", ga.p, "exponent")->required();
    scan->add_option("--t-range", ga.t_range, "t grid as lo:hi:count[:log]")->required();
    scan->add_option("--s-range", ga.s_range, "s grid as lo:hi:count[:log]")->required();
    scan->add_option("--n", ga.n, "dimension")->check(CLI::PositiveNumber);
    scan->add_flag("--attach-lower", ga.attach_lower, "attach eps-family lower bounds to bounded cells");
    add_common(scan, ga.out, true);

    LimitArgs la;
    auto* lim = app.add_subcommand("lemma13-limit",
                                   "extremal double-integral limit with h-refinement table");
    lim->add_option("--c", la.c, "lower limit of both integrals")->check(CLI::PositiveNumber);
    lim->add_option("--p", la.p, "exponent");
    lim->add_option("--h-list", la.h_list, "decreasing h sequence");
    add_common(lim, la.out, false);

    ReduceArgs ba;
    auto* red = app.add_subcommand("reduce-ab", "two-weight operator reduction to the (t', s') triple");
    red->add_option("--a", ba.a, "left weight")->required()->check(CLI::PositiveNumber);
    red->add_option("--b", ba.b, "right weight")->required()->check(CLI::PositiveNumber);
    red->add_option("--s", ba.s, "measure scale")->required()->check(CLI::PositiveNumber);
    red->add_option("--p", ba.p, "exponent")->required();
    red->add_option("--n", ba.n, "dimension")->check(CLI::PositiveNumber);
    add_common(red, ba.out, false);

    RadialArgs xa;
    auto* rad = app.add_subcommand("radial-check", "grid operator vs 1D radial reduction");
    rad->add_option("--t", xa.t, "kernel scale")->required()->check(CLI::PositiveNumber);
    rad->add_option("--g", xa.g, "radial profile: exp (e^-y) or xexp (y e^-y)");
    rad->add_option("--radii", xa.radii, "|z| values as lo:hi:count[:log]");
    rad->add_option("--tol", xa.tol, "grid rule tolerance");
    add_common(rad, xa.out, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (moments->parsed()) return cmd_moments(ma);
        if (repro->parsed()) return cmd_verify_reproducing(ra);
        if (schur->parsed()) return cmd_schur_bound(sa);
        if (norm->parsed()) return cmd_norm_estimate(na);
        if (scan->parsed()) return cmd_threshold_scan(ga);
        if (lim->parsed()) return cmd_limit(la);
        if (red->parsed()) return cmd_reduce_ab(ba);
        if (rad->parsed()) return cmd_radial_check(xa);
    } catch (const convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace focklab
