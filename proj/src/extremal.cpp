#include "hls/extremal.hpp"

#include "hls/constants.hpp"
#include "hls/errors.hpp"
#include "hls/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace hls {

namespace {

double sup_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

ZonalFn normalize_lp(const ZonalFn& h, double p)
{
    const double norm = zonal_lp_norm(h, p);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InternalError("euler_lagrange_iterate: iterate has zero or non-finite norm");
    }
    return h.scaled(1.0 / norm);
}

double power_weighted_l2(const ZonalFn& h, const ZonalFn& f, double exponent)
{
    const auto& rule = h.basis()->rule();
    double sum = 0.0;
    for (int k = 0; k < h.size(); ++k) {
        const double v = f.values()[k];
        sum += rule.weights[k] * std::pow(h.values()[k], exponent) * v * v;
    }
    return h.basis()->shell_area() * sum;
}

void require_positive(const ZonalFn& h, const char* op)
{
    for (double v : h.values()) {
        if (!(v > 0.0)) {
            throw DomainError(std::string(op) + ": function must be strictly positive at every node");
        }
    }
}

// Removes from f its multiple of u so that int u^{r-1} f = 0.
ZonalFn project_out(const ZonalFn& u, const ZonalFn& f, double r, const char* op)
{
    const auto& rule = u.basis()->rule();
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < u.size(); ++k) {
        const double w = rule.weights[k] * std::pow(u.values()[k], r - 1.0);
        num += w * f.values()[k];
        den += w * u.values()[k];
    }
    const double c = num / den;
    ZonalFn g = f.plus(u.scaled(-c));
    const double before = std::sqrt(zonal_power_integral(f, 2.0));
    const double after = std::sqrt(zonal_power_integral(g, 2.0));
    if (!(after > 1e-10 * before)) {
        throw DegenerateDirectionError(std::string(op) + ": direction is annihilated by the constraint projection");
    }
    return g;
}

} // namespace

double el_residual(const ZonalFn& h, double lambda)
{
    const Params params(h.dim(), lambda);
    const double p = params.p();
    const ZonalFn kh = apply_riesz(h, lambda);
    const double c = hls_bilinear(h, h, lambda) / zonal_power_integral(h, p);
    std::vector<double> diff(h.size());
    for (int k = 0; k < h.size(); ++k) {
        diff[k] = kh.values()[k] - c * std::pow(std::abs(h.values()[k]), p - 1.0);
    }
    return sup_abs(diff) / sup_abs(kh.values());
}

IterationResult euler_lagrange_iterate(double lambda, const ZonalFn& h0, const IterationOptions& options)
{
    const Params params(h0.dim(), lambda);
    const double p = params.p();
    if (options.max_iters < 0) {
        throw UsageError("euler_lagrange_iterate: max_iters must be non-negative");
    }
    if (!(options.relax > 0.0 && options.relax <= 1.0)) {
        throw UsageError("euler_lagrange_iterate: relax must lie in (0, 1]");
    }
    require_positive(h0, "euler_lagrange_iterate");
    const double root = 1.0 / (p - 1.0);

    ZonalFn h = normalize_lp(h0, p);
    IterationResult result{h, {}, false, 0.0};
    double residual = el_residual(h, lambda);
    result.trace.push_back({0, hls_bilinear(h, h, lambda), 0.0, residual});
    int iter = 0;
    while (residual > options.tol && iter < options.max_iters) {
        ++iter;
        const ZonalFn kh = apply_riesz(h, lambda);
        std::vector<double> next(h.size());
        for (int k = 0; k < h.size(); ++k) {
            const double v = kh.values()[k];
            if (!(v > 0.0)) {
                throw InternalError("euler_lagrange_iterate: non-positive iterate at node " + std::to_string(k));
            }
            next[k] = std::pow(v, root);
        }
        ZonalFn stepped = normalize_lp(ZonalFn(h.basis(), std::move(next)), p);
        if (options.relax < 1.0) {
            stepped = normalize_lp(h.scaled(1.0 - options.relax).plus(stepped.scaled(options.relax)), p);
        }
        std::vector<double> change(h.size());
        for (int k = 0; k < h.size(); ++k) {
            change[k] = stepped.values()[k] - h.values()[k];
        }
        h = std::move(stepped);
        residual = el_residual(h, lambda);
        // ||h||_p = 1, so the quotient is the bilinear form itself.
        result.trace.push_back({iter, hls_bilinear(h, h, lambda), sup_abs(change), residual});
    }
    result.converged = residual <= options.tol;
    result.el_constant = hls_bilinear(h, h, lambda) / zonal_power_integral(h, p);
    result.h = std::move(h);
    return result;
}

double SecondVariation::scale() const { return std::abs(first) + std::abs(second); }

SecondVariation second_variation_hls_terms(const ZonalFn& h, const ZonalFn& f, double lambda)
{
    const Params params(h.dim(), lambda);
    const double p = params.p();
    require_positive(h, "second_variation_hls");
    const ZonalFn g = project_out(h, f, p, "second_variation_hls");
    SecondVariation out;
    out.first = hls_bilinear(g, g, lambda) * zonal_power_integral(h, p);
    out.second = (p - 1.0) * hls_bilinear(h, h, lambda) * power_weighted_l2(h, g, p - 2.0);
    out.value = out.first - out.second;
    return out;
}

double second_variation_hls(const ZonalFn& h, const ZonalFn& f, double lambda)
{
    return second_variation_hls_terms(h, f, lambda).value;
}

SecondVariation second_variation_hls_transverse(const ZonalFn& h, double lambda)
{
    const Params params(h.dim(), lambda);
    const double p = params.p();
    const double alpha = params.alpha();
    require_positive(h, "second_variation_hls_transverse");
    const int n = h.dim();
    const auto& basis = *h.basis();
    const auto& rule = basis.rule();
    const int degree = basis.degree();
    const double mu = 0.5 * (n + 1); // Gegenbauer index of the m = 1 profiles

    // omega_j h = sqrt(1-t^2) h(t) y_j with y on S^{N-1}; its degree-l part is
    // b_l sqrt(1-t^2) C^{mu}_{l-1}(t) y_j.
    std::vector<double> b(degree + 1, 0.0);
    std::vector<double> c(degree, 0.0);
    for (int k = 0; k < h.size(); ++k) {
        const double t = rule.nodes[k];
        const double weight = rule.weights[k] * (1.0 - t) * (1.0 + t) * h.values()[k];
        c[0] = 1.0;
        if (degree > 1) {
            c[1] = 2.0 * mu * t;
        }
        for (int m = 2; m < degree; ++m) {
            c[m] = (2.0 * (m + mu - 1.0) * t * c[m - 1] - (m + 2.0 * mu - 2.0) * c[m - 2]) / m;
        }
        for (int l = 1; l <= degree; ++l) {
            b[l] += weight * c[l - 1];
        }
    }
    const auto eigen = spectral_kernel(n, alpha, degree).eigenvalues;
    const double y_norm = basis.shell_area() / n; // int_{S^{N-1}} y_j^2
    double form = 0.0;
    double peak = 0.0;
    double tail = 0.0;
    for (int l = 1; l <= degree; ++l) {
        const double norm = zonal_polynomial_norm(n + 2, l - 1);
        b[l] /= norm;
        const double piece = eigen[l] * b[l] * b[l] * norm;
        form += piece;
        const double size = std::sqrt(std::abs(piece));
        peak = std::max(peak, size);
        if (l >= degree - 1) {
            tail = std::max(tail, size);
        }
    }
    if (peak > 0.0 && tail / peak > kSpectralTailTolerance) {
        throw ResolutionError("second_variation_hls_transverse: spectral tail exceeds tolerance");
    }
    form *= std::pow(2.0, -alpha) * y_norm;

    double weighted = 0.0;
    for (int k = 0; k < h.size(); ++k) {
        const double t = rule.nodes[k];
        weighted += rule.weights[k] * (1.0 - t) * (1.0 + t) * std::pow(h.values()[k], p);
    }
    weighted *= y_norm;

    SecondVariation out;
    out.first = form * zonal_power_integral(h, p);
    out.second = (p - 1.0) * hls_bilinear(h, h, lambda) * weighted;
    out.value = out.first - out.second;
    return out;
}

SecondVariation second_variation_hls_coordinates(const ZonalFn& h, double lambda)
{
    const SecondVariation side = second_variation_hls_transverse(h, lambda);
    const ZonalFn axial = h.map([](double t, double v) { return t * v; });
    const SecondVariation top = second_variation_hls_terms(h, axial, lambda);
    const int n = h.dim();
    SecondVariation out;
    out.first = n * side.first + top.first;
    out.second = n * side.second + top.second;
    out.value = n * side.value + top.value;
    return out;
}

SecondVariation second_variation_sobolev_terms(const ZonalFn& u, const ZonalFn& v)
{
    const int n = u.dim();
    if (n < 3) {
        throw DomainError("second_variation_sobolev: requires N >= 3");
    }
    require_positive(u, "second_variation_sobolev");
    const double q = 2.0 * n / (n - 2.0);
    const ZonalFn w = project_out(u, v, q, "second_variation_sobolev");
    SecondVariation out;
    out.first = conformal_energy(w) * zonal_power_integral(u, q);
    out.second = (q - 1.0) * conformal_energy(u) * power_weighted_l2(u, w, q - 2.0);
    out.value = out.first - out.second;
    return out;
}

double second_variation_sobolev(const ZonalFn& u, const ZonalFn& v)
{
    return second_variation_sobolev_terms(u, v).value;
}

namespace {

void check_key_domain(int n, double alpha, int l, const char* op)
{
    if (n < 1 || l < 0 || !(alpha > 0.0 && alpha < 0.5 * n)) {
        throw DomainError(std::string(op) + ": requires 0 < alpha < N/2 and l >= 0");
    }
}

} // namespace

double key_margin(int n, double alpha, int l)
{
    check_key_domain(n, alpha, l, "key_margin");
    if (l == 0) {
        return 0.0;
    }
    const double e = eigenvalue_E(n, alpha, l);
    const double num = (n - 2.0 * alpha) * l * (l + n - 1.0);
    const double den = (n - alpha) * (l - 1.0 + alpha) * (l + n - alpha);
    return e * num / den;
}

double key_margin_difference(int n, double alpha, int l)
{
    check_key_domain(n, alpha, l, "key_margin_difference");
    return (n - 2.0 * alpha) / (n - alpha) * eigenvalue_E(n, alpha, l) - eigenvalue_E(n, alpha - 1.0, l);
}

double key_scalar_gap(int n, double alpha, int l)
{
    check_key_domain(n, alpha, l, "key_scalar_gap");
    if (l == 0) {
        return 0.0; // (alpha-1)/((alpha-1)(N-alpha)), equal to 1/(N-alpha) also as alpha -> 1
    }
    return 1.0 / (n - alpha) - (alpha - 1.0) / ((l - 1.0 + alpha) * (l + n - alpha));
}

KeySides key_inequality_bilinear_check(const ZonalFn& f, double alpha)
{
    const int n = f.dim();
    check_key_domain(n, alpha, 0, "key_inequality_bilinear_check");
    const int degree = f.basis()->degree();
    const auto upper = spectral_kernel(n, alpha, degree).eigenvalues;
    const auto lower = spectral_kernel(n, alpha - 1.0, degree).eigenvalues;
    double lhs = 0.0;
    for (int l = 0; l <= degree; ++l) {
        const double a = f.coeffs()[l];
        lhs += (upper[l] - lower[l]) * a * a * f.basis()->norm(l);
    }
    KeySides out;
    out.lhs = std::pow(2.0, -alpha) * f.basis()->shell_area() * lhs;
    out.rhs = alpha / (n - alpha) * hls_bilinear(f, f, 2.0 * alpha);
    return out;
}

double key_lhs_quadrature(const ZonalFn& f, double alpha)
{
    const int n = f.dim();
    check_key_domain(n, alpha, 0, "key_lhs_quadrature");
    const int degree = f.basis()->degree();
    const double base = 0.5 * (n - 2);
    // (1 - t)^{-alpha} sits in the Jacobi weight; the rest is t 2^{-alpha}.
    const JacobiRule rule = gauss_jacobi_rule(base - alpha, base, 200);
    const double scale = std::pow(2.0, -alpha);
    double lhs = 0.0;
    for (int l = 0; l <= degree; ++l) {
        double sum = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = rule.nodes[k];
            sum += rule.weights[k] * t * scale * zonal_polynomial(n, l, t);
        }
        const double a = f.coeffs()[l];
        lhs += funk_hecke_kappa(n, l) * sum * a * a * f.basis()->norm(l);
    }
    return f.basis()->shell_area() * lhs;
}

double key_lhs_two_forms(const ZonalFn& f, double alpha)
{
    return hls_bilinear(f, f, 2.0 * alpha) - std::pow(2.0, -alpha) * kernel_bilinear(f, f, alpha - 1.0);
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace)
{
    out << "iter,quotient,sup_change,residual\n";
    char buf[128];
    for (const auto& step : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", step.iter, step.quotient, step.sup_change,
                      step.residual);
        out << buf;
    }
}

} // namespace hls
