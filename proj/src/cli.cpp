#include "hls/cli.hpp"

#include "hls/constants.hpp"
#include "hls/errors.hpp"
#include "hls/extremal.hpp"
#include "hls/normalize.hpp"
#include "hls/random.hpp"
#include "hls/report.hpp"
#include "hls/suites.hpp"
#include "hls/zonal.hpp"
#include "hls/zonal_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace hls {

namespace {

struct ConstantsArgs {
    int dim = 0;
    std::optional<double> lambda;
    std::optional<double> s;
};

struct SpectrumArgs {
    int dim = 0;
    double alpha = 0.0;
    int lmax = 10;
    std::string out;
};

struct VerifyArgs {
    std::string suite;
    std::optional<int> dim;
    std::optional<double> alpha;
    std::optional<double> lambda;
    std::optional<int> lmax;
    std::optional<int> samples;
};

struct OptimizeArgs {
    int dim = 0;
    double lambda = 0.0;
    int nodes = kZonalNodes;
    int iters = 500;
    double relax = 1.0;
    double tol = 1e-8;
    std::string start = "random";
    std::string trace;
    std::string output;
};

struct NormalizeArgs {
    std::string input;
    double p = 0.0;
    std::string output;
};

struct SampleArgs {
    std::string family;
    int dim = 0;
    std::optional<double> lambda;
    double r = 0.0;
    int nodes = kZonalNodes;
    int index = 0;
    int degree = 4;
    std::string out;
};

void emit(std::ostream& out, const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw UsageError("cannot write " + path);
    }
    file << text;
}

Params make_params(int dim, double lambda)
{
    if (dim < 1) {
        throw UsageError("--dim must be at least 1");
    }
    if (!(lambda > 0.0 && lambda < dim)) {
        throw UsageError("lambda must lie in the open interval (0, N)");
    }
    return Params(dim, lambda);
}

int cmd_constants(const ConstantsArgs& a, Report& r)
{
    if (a.lambda.has_value() == a.s.has_value()) {
        throw UsageError("constants: give exactly one of --lambda and --s");
    }
    const double lambda = a.lambda ? *a.lambda : a.dim - 2.0 * *a.s;
    const Params params = make_params(a.dim, lambda);
    const int n = a.dim;
    const double s = params.s();
    r.parameter("dim", n);
    r.parameter("lambda", lambda);
    r.parameter("s", s);
    r.value("p", params.p());
    r.value("q", params.q());
    r.value("alpha", params.alpha());
    const double c_hls = hls_sharp_constant(n, lambda);
    const double c_sob = sobolev_sharp_constant(n, s);
    const double green = green_coeff(n, s);
    r.value("hls_sharp_constant", c_hls);
    r.value("sobolev_sharp_constant", c_sob);
    r.value("green_coeff", green);
    r.check("duality S(N,s) G_s C_HLS(N,N-2s) = 1", c_sob * green * c_hls, 1.0, 1e-12);
    if (s == 1.0 && n >= 3) {
        const double sphere_form = sobolev_sphere_constant(n);
        r.value("sobolev_sphere_constant", sphere_form);
        r.check("two forms of the s=1 Sobolev constant", sphere_form, c_sob, 1e-13);
    }
    return r.pass() ? kExitPass : kExitFail;
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out)
{
    if (a.dim < 1) {
        throw UsageError("--dim must be at least 1");
    }
    if (!(a.alpha > 0.0 && a.alpha < 0.5 * a.dim)) {
        throw UsageError("spectrum: alpha must lie in (0, N/2)");
    }
    if (a.lmax < 0) {
        throw UsageError("spectrum: --lmax must be non-negative");
    }
    std::ostringstream csv;
    csv << "l,E,E_tilde,key_margin\n";
    bool ok = true;
    char buf[160];
    for (int l = 0; l <= a.lmax; ++l) {
        const double e = eigenvalue_E(a.dim, a.alpha, l);
        const double et = eigenvalue_E(a.dim, a.alpha - 1.0, l);
        const double m = key_margin(a.dim, a.alpha, l);
        ok = ok && m >= -1e-12;
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", l, e, et, m);
        csv << buf;
    }
    emit(out, a.out, csv.str());
    return ok ? kExitPass : kExitFail;
}

ZonalFn start_function(const std::string& kind, int dim, int nodes, std::uint64_t seed)
{
    if (kind == "constant") {
        return ZonalFn::sample(dim, [](double) { return 1.0; }, nodes);
    }
    if (kind == "linear") {
        return ZonalFn::sample(dim, [](double t) { return 1.0 + 0.3 * t; }, nodes);
    }
    if (kind == "random") {
        Rng rng(seed);
        return random_nonnegative_zonal(dim, rng, static_cast<int>(seed % 3), nodes);
    }
    throw UsageError("optimize: --start must be random, constant or linear");
}

double sup_relative_spread(const ZonalFn& f)
{
    double lo = f.values().front();
    double hi = lo;
    for (double v : f.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return (hi - lo) / hi;
}

int cmd_optimize(const OptimizeArgs& a, std::uint64_t seed, Report& r, std::ostream& out)
{
    const Params params = make_params(a.dim, a.lambda);
    if (a.nodes < 8) {
        throw UsageError("optimize: --nodes must be at least 8");
    }
    r.parameter("dim", a.dim);
    r.parameter("lambda", a.lambda);
    r.parameter("nodes", a.nodes);
    r.parameter("iters", a.iters);
    r.parameter("relax", a.relax);
    r.parameter("tol", a.tol);
    r.parameter("start", a.start);
    r.seed = seed;

    const ZonalFn h0 = start_function(a.start, a.dim, a.nodes, seed);
    const IterationResult res = euler_lagrange_iterate(a.lambda, h0, {a.iters, a.relax, a.tol});
    if (!a.trace.empty()) {
        std::ostringstream csv;
        write_trace_csv(csv, res.trace);
        emit(out, a.trace, csv.str());
    }
    r.value("initial_quotient", res.trace.front().quotient);
    if (a.iters == 0) {
        return kExitPass;
    }
    const double sharp = hls_sharp_constant(a.dim, a.lambda);
    const auto& last = res.trace.back();
    r.value("sharp_constant", sharp);
    r.value("final_quotient", last.quotient);
    r.value("iterations", last.iter);
    r.value("el_constant", res.el_constant);
    double worst_excess = -1.0;
    for (const auto& step : res.trace) {
        worst_excess = std::max(worst_excess, step.quotient / sharp - 1.0);
    }
    r.check("EL residual", last.residual, 0.0, a.tol, Tolerance::at_most);
    r.check("quotient vs sharp constant", last.quotient, sharp, 1e-6);
    r.check("quotient never exceeds the sharp constant", worst_excess, 0.0, 1e-9, Tolerance::at_most);
    const ComResult com = com_normalize(res.h, params.p());
    r.value("com_delta", com.delta);
    r.value("com_xi_sign", com.xi_sign);
    r.check("COM-normalized limit is constant (sup-relative spread)", sup_relative_spread(*com.transported), 0.0,
            1e-4, Tolerance::at_most);
    if (!a.output.empty()) {
        write_zonal_file(a.output, res.h);
    }
    return r.pass() ? kExitPass : kExitFail;
}

int cmd_normalize(const NormalizeArgs& a, std::ostream& out)
{
    if (!(a.p > 0.0)) {
        throw UsageError("normalize: --p must be positive");
    }
    const ZonalFn f = read_zonal_file(a.input);
    const ComResult com = com_normalize(f, a.p);
    constexpr double tolerance = 1e-10;
    double worst = 0.0;
    for (double v : com.residual) {
        worst = std::max(worst, std::abs(v));
    }
    nlohmann::ordered_json doc;
    doc["delta"] = com.delta;
    doc["xi_sign"] = com.xi_sign;
    doc["residual"] = com.residual;
    doc["iters"] = com.iterations;
    doc["p"] = a.p;
    doc["tolerance"] = tolerance;
    doc["status"] = worst <= tolerance ? "pass" : "fail";
    out << doc.dump(2) << "\n";
    if (!a.output.empty()) {
        write_zonal_file(a.output, *com.transported);
    }
    return worst <= tolerance ? kExitPass : kExitFail;
}

int cmd_sample(const SampleArgs& a, std::uint64_t seed, std::ostream& out)
{
    if (a.dim < 1) {
        throw UsageError("--dim must be at least 1");
    }
    if (!(a.r >= 0.0 && a.r < 1.0)) {
        throw UsageError("sample: --r must lie in [0, 1)");
    }
    std::optional<ZonalFn> f;
    if (a.family == "hls-optimizer") {
        if (!a.lambda) {
            throw UsageError("sample: hls-optimizer needs --lambda");
        }
        make_params(a.dim, *a.lambda);
        f = hls_optimizer(a.dim, *a.lambda, a.r, a.nodes);
    } else if (a.family == "sobolev-optimizer") {
        if (a.dim < 3) {
            throw UsageError("sample: sobolev-optimizer needs --dim >= 3");
        }
        f = sobolev_optimizer(a.dim, a.r, a.nodes);
    } else if (a.family == "random") {
        Rng rng(seed);
        f = random_nonnegative_zonal(a.dim, rng, a.index, a.nodes);
    } else if (a.family == "polynomial") {
        Rng rng(seed);
        f = random_polynomial_zonal(a.dim, rng, a.degree, a.nodes);
    } else {
        throw UsageError("sample: unknown family '" + a.family + "'");
    }
    emit(out, a.out, zonal_to_json(*f));
    return kExitPass;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical checks of the sharp HLS and Sobolev inequalities on spheres", "hlscheck"};
    app.require_subcommand(1);
    bool timing = false;
    std::uint64_t seed = 0;
    app.add_flag("--timing", timing, "Include wall time in reports (breaks byte-identical output)");
    app.add_option("--seed", seed, "Random seed (default 0)")->envname("RUN_SEED");

    ConstantsArgs ca;
    auto* constants = app.add_subcommand("constants", "Sharp constants and the duality check");
    constants->add_option("--dim", ca.dim, "Dimension N")->required();
    auto* opt_lambda = constants->add_option("--lambda", ca.lambda, "HLS exponent lambda in (0, N)");
    auto* opt_s = constants->add_option("--s", ca.s, "Sobolev order s in (0, N/2)");
    opt_lambda->excludes(opt_s);

    SpectrumArgs sa;
    auto* spectrum = app.add_subcommand("spectrum", "CSV of E_l, E~_l and the key margin");
    spectrum->add_option("--dim", sa.dim, "Dimension N")->required();
    spectrum->add_option("--alpha", sa.alpha, "alpha in (0, N/2)")->required();
    spectrum->add_option("--lmax", sa.lmax, "Largest degree")->capture_default_str();
    spectrum->add_option("--out", sa.out, "Output file (default stdout)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", va.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--dim", va.dim, "Restrict to one dimension");
    verify->add_option("--alpha", va.alpha, "Restrict to one alpha");
    verify->add_option("--lambda", va.lambda, "Restrict to one lambda (with --dim)");
    verify->add_option("--lmax", va.lmax, "Largest degree");
    verify->add_option("--samples", va.samples, "Number of random samples");
    verify->add_option("--seed", seed, "Random seed")->envname("RUN_SEED");

    OptimizeArgs oa;
    auto* optimize = app.add_subcommand("optimize", "Euler-Lagrange fixed-point search");
    optimize->add_option("--dim", oa.dim, "Dimension N")->required();
    optimize->add_option("--lambda", oa.lambda, "lambda in (0, N)")->required();
    optimize->add_option("--nodes", oa.nodes, "Gauss nodes")->capture_default_str();
    optimize->add_option("--iters", oa.iters, "Maximum iterations")->capture_default_str()->check(CLI::NonNegativeNumber);
    optimize->add_option("--relax", oa.relax, "Under-relaxation factor in (0, 1]")->capture_default_str();
    optimize->add_option("--tol", oa.tol, "Residual tolerance")->capture_default_str();
    optimize->add_option("--start", oa.start, "random, constant or linear")->capture_default_str();
    optimize->add_option("--trace", oa.trace, "Write the iteration trace CSV here");
    optimize->add_option("--output", oa.output, "Write the final iterate (zonal JSON) here");
    optimize->add_option("--seed", seed, "Random seed")->envname("RUN_SEED");

    NormalizeArgs na;
    auto* normalize = app.add_subcommand("normalize", "Center-of-mass normalization of a zonal function");
    normalize->add_option("--input", na.input, "Zonal JSON file")->required();
    normalize->add_option("--p", na.p, "Exponent p")->required();
    normalize->add_option("--output", na.output, "Write the normalized function (zonal JSON) here");

    SampleArgs pa;
    auto* sample = app.add_subcommand("sample", "Write a zonal function as JSON");
    sample->add_option("--family", pa.family, "hls-optimizer, sobolev-optimizer, random or polynomial")->required();
    sample->add_option("--dim", pa.dim, "Dimension N")->required();
    sample->add_option("--lambda", pa.lambda, "lambda for hls-optimizer");
    sample->add_option("--r", pa.r, "Concentration r in [0, 1)")->capture_default_str();
    sample->add_option("--nodes", pa.nodes, "Gauss nodes")->capture_default_str();
    sample->add_option("--index", pa.index, "Corpus index for random")->capture_default_str();
    sample->add_option("--degree", pa.degree, "Degree for polynomial")->capture_default_str();
    sample->add_option("--out", pa.out, "Output file (default stdout)");
    sample->add_option("--seed", seed, "Random seed")->envname("RUN_SEED");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    Report report;
    report.args.assign(args.begin() + (args.empty() ? 0 : 1), args.end());
    int code = kExitPass;
    try {
        bool has_report = true;
        if (*constants) {
            report.command = "constants";
            code = cmd_constants(ca, report);
        } else if (*spectrum) {
            has_report = false;
            code = cmd_spectrum(sa, out);
        } else if (*verify) {
            SuiteOptions so{va.dim, va.alpha, va.lambda, va.lmax, va.samples, seed};
            Report suite = run_suite(va.suite, so);
            suite.args = report.args;
            report = std::move(suite);
            code = report.pass() ? kExitPass : kExitFail;
        } else if (*optimize) {
            report.command = "optimize";
            code = cmd_optimize(oa, seed, report, out);
        } else if (*normalize) {
            has_report = false;
            code = cmd_normalize(na, out);
        } else if (*sample) {
            has_report = false;
            code = cmd_sample(pa, seed, out);
        }
        if (has_report) {
            if (timing) {
                report.wall_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            }
            out << report.to_json();
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return code;
}

} // namespace hls
