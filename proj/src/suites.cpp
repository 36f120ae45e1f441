#include "hls/suites.hpp"

#include "hls/constants.hpp"
#include "hls/errors.hpp"
#include "hls/extremal.hpp"
#include "hls/geometry.hpp"
#include "hls/random.hpp"
#include "hls/sphere2.hpp"
#include "hls/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace hls {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt_num(double v) { return format_number(v); }

std::vector<int> dims_or(const SuiteOptions& o, std::vector<int> fallback)
{
    if (o.dim) {
        return {*o.dim};
    }
    return fallback;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

void suite_funk_hecke(Report& r, const SuiteOptions& o)
{
    const int lmax = o.lmax.value_or(10);
    std::vector<double> alphas = {-0.5, 0.25, 0.5, 1.25};
    if (o.alpha) {
        alphas = {*o.alpha};
    }
    r.parameter("lmax", lmax);
    for (int n : dims_or(o, {1, 2, 3, 4})) {
        for (double a : alphas) {
            if (!(a > -1.0 && a < 0.5 * n)) {
                if (o.alpha) {
                    throw UsageError("funk-hecke: alpha must lie in (-1, N/2)");
                }
                continue;
            }
            double worst = 0.0;
            for (int l = 0; l <= lmax; ++l) {
                const double closed = eigenvalue_E(n, a, l);
                const double quad = funk_hecke_quadrature(n, power_kernel(a), l);
                worst = std::max(worst, rel_err(quad, closed));
            }
            r.check("quadrature vs closed form N=" + std::to_string(n) + " alpha=" + fmt_num(a), worst, 0.0, 1e-8,
                    Tolerance::absolute);
        }
    }
    if (!o.dim || *o.dim == 2) {
        double worst = 0.0;
        for (int l = 0; l <= lmax; ++l) {
            worst = std::max(worst, rel_err(eigenvalue_E(2, 0.5, l), 4.0 * std::sqrt(2.0) * pi / (2 * l + 1)));
        }
        r.check("E_l(2,1/2) = 4 sqrt2 pi/(2l+1)", worst, 0.0, 1e-10, Tolerance::absolute);
    }
}

void suite_duality(Report& r, const SuiteOptions& o)
{
    for (int n : dims_or(o, {3, 4, 5})) {
        for (double s : {0.25, 0.5, 1.0, 1.5}) {
            if (!(s < 0.5 * n)) {
                continue;
            }
            const double product = sobolev_sharp_constant(n, s) * green_coeff(n, s) * hls_sharp_constant(n, n - 2.0 * s);
            r.check("S*G*C_HLS N=" + std::to_string(n) + " s=" + fmt_num(s), product, 1.0, 1e-12);
        }
    }
}

void suite_chordal(Report& r, const SuiteOptions& o)
{
    const int samples = o.samples.value_or(1000);
    Rng rng(o.seed);
    for (int n : dims_or(o, {1, 2, 3, 4})) {
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            std::vector<double> x(n);
            std::vector<double> y(n);
            const double sx = std::exp(rng.uniform(-2.0, 2.0));
            const double sy = std::exp(rng.uniform(-2.0, 2.0));
            for (int i = 0; i < n; ++i) {
                x[i] = sx * rng.normal();
                y[i] = sy * rng.normal();
            }
            const ChordalSides c = chordal_factorization(x, y);
            worst = std::max(worst, std::abs(c.lhs - c.rhs));
        }
        r.check("chordal identity N=" + std::to_string(n), worst, 0.0, 1e-14, Tolerance::absolute);
    }
}

struct HlsConfig {
    int n;
    double lambda;
};

std::vector<HlsConfig> hls_configs(const SuiteOptions& o)
{
    if (o.dim || o.lambda) {
        if (!o.dim || !o.lambda) {
            throw UsageError("give both --dim and --lambda");
        }
        return {{*o.dim, *o.lambda}};
    }
    return {{1, 0.5}, {2, 1.0}, {3, 1.0}, {3, 2.0}};
}

void suite_conformal(Report& r, const SuiteOptions& o)
{
    Rng rng(o.seed);
    const int samples = o.samples.value_or(200);
    for (int n : dims_or(o, {1, 2, 3, 4})) {
        double worst_comp = 0.0;
        double worst_jac = 0.0;
        for (int k = 0; k < samples; ++k) {
            const SpherePoint xi = random_sphere_point(n, rng);
            const SpherePoint w = random_sphere_point(n, rng);
            const double d1 = std::exp(rng.uniform(-1.5, 1.5));
            const double d2 = std::exp(rng.uniform(-1.5, 1.5));
            const SpherePoint twice = conformal_map_apply(ConformalMap(d1, xi), conformal_map_apply(ConformalMap(d2, xi), w));
            const SpherePoint once = conformal_map_apply(ConformalMap(d1 * d2, xi), w);
            for (int i = 0; i <= n; ++i) {
                worst_comp = std::max(worst_comp, std::abs(twice[i] - once[i]));
            }
            const ConformalMap m(d1, xi);
            const double fd = finite_difference_jacobian([&](const SpherePoint& p) { return conformal_map_apply(m, p); }, w);
            worst_jac = std::max(worst_jac, rel_err(fd, conformal_jacobian(m, w)));
        }
        r.check("composition law N=" + std::to_string(n), worst_comp, 0.0, 1e-12, Tolerance::absolute);
        r.check("jacobian vs finite differences N=" + std::to_string(n), worst_jac, 0.0, 1e-6, Tolerance::absolute);
    }
    for (const auto& c : hls_configs(o)) {
        const double p = Params(c.n, c.lambda).p();
        double worst_norm = 0.0;
        double worst_quot = 0.0;
        for (int k = 0; k < 12; ++k) {
            const ZonalFn f = random_nonnegative_zonal(c.n, rng, k);
            const double delta = std::exp(rng.uniform(-0.7, 0.7));
            const ZonalFn g = transport(f, delta, rng.sign(), p);
            worst_norm = std::max(worst_norm, rel_err(zonal_lp_norm(g, p), zonal_lp_norm(f, p)));
            worst_quot = std::max(worst_quot, rel_err(hls_quotient(g, c.lambda), hls_quotient(f, c.lambda)));
        }
        const std::string tag = " N=" + std::to_string(c.n) + " lambda=" + fmt_num(c.lambda);
        r.check("transport preserves L^p norm" + tag, worst_norm, 0.0, 1e-7, Tolerance::absolute);
        r.check("HLS quotient invariant under transport" + tag, worst_quot, 0.0, 1e-7, Tolerance::absolute);
    }
}

void suite_gsr(Report& r, const SuiteOptions& o)
{
    Rng rng(o.seed);
    const int samples = o.samples.value_or(50);
    for (int n : dims_or(o, {2, 3})) {
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            const ZonalFn u = random_polynomial_zonal(n, rng, 2 + k % 12);
            const IdentitySides s = gsr_zonal_check(u);
            worst = std::max(worst, rel_err(s.lhs, s.rhs));
        }
        r.check("zonal sum identity N=" + std::to_string(n), worst, 0.0, 1e-10, Tolerance::absolute);
    }
    if (!o.dim || *o.dim == 2) {
        const auto grid = Grid2::create(256, 512);
        const GridFn2 one = GridFn2::sample(grid, [](const SpherePoint&) { return 1.0; });
        const GsrSides s1 = gsr_full_check(one);
        r.check("S^2 grid u=1 lhs = 8 pi", s1.lhs, 8.0 * pi, 1e-4);
        r.check("S^2 grid u=1 rhs = 8 pi", s1.rhs, 8.0 * pi, 1e-12);
        const GsrSides s3 = gsr_full_check(coordinate_function(grid, 3));
        r.check("S^2 grid u=omega_3", rel_err(s3.lhs, s3.rhs), 0.0, 1e-4, Tolerance::absolute);
        const SphereFunction e1 = [](const SpherePoint& w) { return std::exp(w[0]); };
        const GsrSides se = gsr_full_check(GridFn2::sample(grid, e1));
        r.check("S^2 grid u=exp(omega_1)", rel_err(se.lhs, se.rhs), 0.0, 1e-4, Tolerance::absolute);
        const ConvergenceStudy study = gsr_convergence(e1, {32, 64, 128});
        r.check("S^2 grid observed order", study.orders.back(), 2.0, 0.25, Tolerance::absolute);
    }
}

void suite_key(Report& r, const SuiteOptions& o)
{
    const int lmax = o.lmax.value_or(200);
    r.parameter("lmax", lmax);
    for (int n : dims_or(o, {1, 2, 3, 4, 5})) {
        std::vector<double> alphas;
        if (o.alpha) {
            alphas = {*o.alpha};
        } else {
            for (int k = 0;; ++k) {
                const double a = 0.1 + 0.05 * k;
                if (a > 0.5 * n - 0.05 + 1e-12) {
                    break;
                }
                alphas.push_back(a);
            }
        }
        double min_margin = std::numeric_limits<double>::infinity();
        double max_zero = 0.0;
        double min_gap = std::numeric_limits<double>::infinity();
        double worst_forms = 0.0;
        for (double a : alphas) {
            max_zero = std::max(max_zero, std::abs(key_margin(n, a, 0)));
            for (int l = 1; l <= lmax; ++l) {
                const double m = key_margin(n, a, l);
                min_margin = std::min(min_margin, m);
                min_gap = std::min(min_gap, key_scalar_gap(n, a, l));
                if (l <= 60) {
                    worst_forms = std::max(worst_forms, rel_err(key_margin_difference(n, a, l), m));
                }
            }
        }
        const std::string tag = " N=" + std::to_string(n);
        r.check("margin at l=0 vanishes" + tag, max_zero, 0.0, 1e-12, Tolerance::absolute);
        r.check("min margin over l>=1 exceeds 1e-12" + tag, min_margin, 1e-12, 0.0, Tolerance::at_least);
        r.check("scalar inequality gap l>=1 positive" + tag, min_gap, 0.0, 0.0, Tolerance::at_least);
        r.check("factored margin vs eigenvalue difference (l<=60)" + tag, worst_forms, 0.0, 1e-10,
                Tolerance::absolute);
    }
    Rng rng(o.seed);
    const int n = o.dim.value_or(3);
    const double a = o.alpha.value_or(0.5 * n > 0.7 ? 0.7 : 0.25 * n);
    double worst_routes = 0.0;
    double worst_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < o.samples.value_or(30); ++k) {
        const ZonalFn f = random_nonnegative_zonal(n, rng, k);
        const KeySides s = key_inequality_bilinear_check(f, a);
        worst_routes = std::max(worst_routes, rel_err(key_lhs_quadrature(f, a), s.lhs));
        worst_routes = std::max(worst_routes, rel_err(key_lhs_two_forms(f, a), s.lhs));
        worst_gap = std::min(worst_gap, (s.lhs - s.rhs) / std::abs(s.rhs));
    }
    const std::string tag = " N=" + std::to_string(n) + " alpha=" + fmt_num(a);
    r.check("bilinear lhs: kernel identity vs quadrature vs two forms" + tag, worst_routes, 0.0, 1e-10,
            Tolerance::absolute);
    r.check("bilinear lhs - rhs (relative) on random f" + tag, worst_gap, 0.0, 1e-12, Tolerance::at_least);
    const KeySides c = key_inequality_bilinear_check(ZonalFn::sample(n, [](double) { return 1.0; }), a);
    r.check("equality at the constant" + tag, c.lhs, c.rhs, 1e-12);
}

void suite_hls(Report& r, const SuiteOptions& o)
{
    Rng rng(o.seed);
    const int samples = o.samples.value_or(200);
    for (const auto& c : hls_configs(o)) {
        const double sharp = hls_sharp_constant(c.n, c.lambda);
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < samples; ++k) {
            const ZonalFn f = random_nonnegative_zonal(c.n, rng, k);
            worst = std::max(worst, hls_quotient(f, c.lambda) / sharp - 1.0);
        }
        const std::string tag = " N=" + std::to_string(c.n) + " lambda=" + fmt_num(c.lambda);
        r.check("random quotient / sharp - 1" + tag, worst, 0.0, 1e-9, Tolerance::at_most);
        double worst_opt = 0.0;
        for (double rr : {0.0, 0.3, 0.5, 0.7, 0.9}) {
            worst_opt = std::max(worst_opt, rel_err(hls_quotient(hls_optimizer(c.n, c.lambda, rr), c.lambda), sharp));
        }
        r.check("optimizer family attains the sharp constant" + tag, worst_opt, 0.0, 1e-7, Tolerance::absolute);
    }
}

void suite_sobolev(Report& r, const SuiteOptions& o)
{
    Rng rng(o.seed);
    const int samples = o.samples.value_or(200);
    for (int n : dims_or(o, {3, 4, 5})) {
        if (n < 3) {
            throw UsageError("sobolev: requires --dim >= 3");
        }
        const double sharp = sobolev_sphere_constant(n);
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < samples; ++k) {
            const ZonalFn u = random_nonnegative_zonal(n, rng, k);
            worst = std::min(worst, sobolev_quotient(u) / sharp - 1.0);
        }
        const std::string tag = " N=" + std::to_string(n);
        r.check("random quotient / sharp - 1" + tag, worst, 0.0, 1e-9, Tolerance::at_least);
        double worst_opt = 0.0;
        for (double rr : {0.0, 0.3, 0.5, 0.7, 0.9}) {
            worst_opt = std::max(worst_opt, rel_err(sobolev_quotient(sobolev_optimizer(n, rr)), sharp));
        }
        r.check("optimizer family attains the sharp constant" + tag, worst_opt, 0.0, 1e-7, Tolerance::absolute);
        const ZonalFn one = ZonalFn::sample(n, [](double) { return 1.0; });
        const ZonalFn c2 = ZonalFn::sample(n, [n](double t) { return zonal_polynomial(n, 2, t); });
        const ZonalFn deg1 = ZonalFn::sample(n, [](double t) { return t; });
        r.check("second variation at U=1, v=C_2" + tag, second_variation_sobolev(one, c2), 0.0, 0.0,
                Tolerance::at_least);
        const SecondVariation sv1 = second_variation_sobolev_terms(one, deg1);
        r.check("second variation at U=1, v=t (relative to scale)" + tag, sv1.value / sv1.scale(), 0.0, 1e-10,
                Tolerance::absolute);
    }
}

using SuiteFn = std::function<void(Report&, const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry()
{
    static const std::map<std::string, SuiteFn> table = {
        {"funk-hecke", suite_funk_hecke}, {"gsr", suite_gsr},       {"key", suite_key},
        {"duality", suite_duality},       {"chordal", suite_chordal}, {"conformal-invariance", suite_conformal},
        {"sobolev", suite_sobolev},       {"hls", suite_hls},
    };
    return table;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"funk-hecke", "gsr",  "key",     "duality", "chordal",
                                                   "conformal-invariance", "sobolev", "hls"};
    return names;
}

Report run_suite(const std::string& name, const SuiteOptions& options)
{
    const auto& table = registry();
    const auto it = table.find(name);
    if (it == table.end()) {
        throw UsageError("unknown suite '" + name + "'");
    }
    Report r;
    r.command = "verify";
    r.parameter("suite", name);
    if (options.dim) {
        r.parameter("dim", *options.dim);
    }
    if (options.alpha) {
        r.parameter("alpha", *options.alpha);
    }
    if (options.lambda) {
        r.parameter("lambda", *options.lambda);
    }
    if (options.samples) {
        r.parameter("samples", *options.samples);
    }
    r.seed = options.seed;
    it->second(r, options);
    return r;
}

} // namespace hls
