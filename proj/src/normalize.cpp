#include "hls/normalize.hpp"

#include "hls/errors.hpp"
#include "hls/specfun.hpp"

#include <cmath>
#include <string>

namespace hls {

std::vector<double> com_vector(const ZonalFn& f)
{
    std::vector<double> out(f.dim() + 1, 0.0);
    const auto& rule = f.basis()->rule();
    double sum = 0.0;
    for (int k = 0; k < f.size(); ++k) {
        sum += rule.weights[k] * rule.nodes[k] * f.values()[k];
    }
    out.back() = f.basis()->shell_area() * sum;
    return out;
}

std::vector<double> F_map(double r, const SpherePoint& xi, const ZonalFn& f, int inner_nodes)
{
    if (!(r > 0.0 && r < 1.0)) {
        throw DomainError("F_map: r must lie in (0, 1)");
    }
    const int n = f.dim();
    if (xi.dim() != n) {
        throw UsageError("F_map: xi has the wrong dimension");
    }
    const double mass = zonal_integral(f);
    if (!(std::abs(mass - 1.0) <= 1e-10)) {
        throw UsageError("F_map: f must be normalized to unit integral");
    }
    const double delta = 1.0 - r;

    // Frame: e = e_{N+1}; xi = c e + s u with u a unit vector orthogonal to e.
    const double c = xi.axis();
    std::vector<double> u(n + 1, 0.0);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        s += xi[i] * xi[i];
    }
    s = std::sqrt(s);
    if (s > 0.0) {
        for (int i = 0; i < n; ++i) {
            u[i] = xi[i] / s;
        }
    }

    // omega = t e + sqrt(1-t^2) (v u + sqrt(1-v^2) nu), nu orthogonal to e, u; the
    // nu-part of gamma(omega) integrates to zero, leaving components along e and u.
    // Inner measure of v on S^{N-1}: |S^{N-2}| (1-v^2)^{(N-3)/2} dv.
    std::vector<double> inner_v;
    std::vector<double> inner_w;
    if (n == 1) {
        inner_v = {-1.0, 1.0};
        inner_w = {1.0, 1.0};
    } else {
        const QuadratureRule rule = gauss_gegenbauer_rule(n - 1, inner_nodes);
        const double shell = sphere_area(n - 2);
        inner_v = rule.nodes;
        inner_w = rule.weights;
        for (double& w : inner_w) {
            w *= shell;
        }
    }

    const auto& rule = f.basis()->rule();
    double along_e = 0.0;
    double along_u = 0.0;
    const double d2 = delta * delta;
    for (int k = 0; k < f.size(); ++k) {
        const double t = rule.nodes[k];
        const double st = std::sqrt((1.0 - t) * (1.0 + t));
        double acc_e = 0.0;
        double acc_u = 0.0;
        for (std::size_t m = 0; m < inner_v.size(); ++m) {
            const double v = inner_v[m];
            const double w_dot_xi = t * c + st * v * s;
            const double w_dot_u = st * v;
            const double denom = (1.0 + w_dot_xi) + d2 * (1.0 - w_dot_xi);
            const double tangential = 2.0 * delta / denom;
            const double axial = ((1.0 + w_dot_xi) - d2 * (1.0 - w_dot_xi)) / denom;
            // gamma = tangential (omega - (omega.xi) xi) + axial xi
            const double g_e = tangential * (t - w_dot_xi * c) + axial * c;
            const double g_u = tangential * (w_dot_u - w_dot_xi * s) + axial * s;
            acc_e += inner_w[m] * g_e;
            acc_u += inner_w[m] * g_u;
        }
        along_e += rule.weights[k] * f.values()[k] * acc_e;
        along_u += rule.weights[k] * f.values()[k] * acc_u;
    }
    std::vector<double> out(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        out[i] = along_u * u[i];
    }
    out[n] += along_e;
    return out;
}

double mass_com_residual(const ZonalFn& f, double p, double delta)
{
    const auto& rule = f.basis()->rule();
    double sum = 0.0;
    for (int k = 0; k < f.size(); ++k) {
        const double v = std::abs(f.values()[k]);
        if (v >= 1e-300) {
            sum += rule.weights[k] * conformal_axis_image(delta, rule.nodes[k]) * std::pow(v, p);
        }
    }
    return f.basis()->shell_area() * sum;
}

ComResult com_normalize(const ZonalFn& f, double p, const ComOptions& options)
{
    if (!(p > 0.0)) {
        throw DomainError("com_normalize: p must be positive");
    }
    for (double v : f.values()) {
        if (v < 0.0) {
            throw DomainError("com_normalize: f must be nonnegative");
        }
    }
    const double mass = zonal_power_integral(f, p);
    if (!(mass > 0.0)) {
        throw DomainError("com_normalize: zero function");
    }

    ComResult result;
    double log_delta = 0.0;
    const double at_identity = mass_com_residual(f, p, 1.0);
    result.probes.push_back({0.0, at_identity});
    if (std::abs(at_identity) > options.centered_tolerance * mass) {
        double lo = options.log_delta_min;
        double hi = options.log_delta_max;
        double r_lo = mass_com_residual(f, p, std::exp(lo));
        double r_hi = mass_com_residual(f, p, std::exp(hi));
        result.probes.push_back({lo, r_lo});
        result.probes.push_back({hi, r_hi});
        if (!(r_lo * r_hi < 0.0)) {
            throw NoRootError("com_normalize: residual has no sign change over delta in [1e-8, 1e8] (r_lo = "
                              + std::to_string(r_lo) + ", r_hi = " + std::to_string(r_hi) + ")");
        }
        for (int it = 0; it < options.max_iterations; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double r_mid = mass_com_residual(f, p, std::exp(mid));
            result.probes.push_back({mid, r_mid});
            ++result.iterations;
            if (r_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((r_mid > 0.0) == (r_lo > 0.0)) {
                lo = mid;
                r_lo = r_mid;
            } else {
                hi = mid;
            }
            if (hi - lo <= 4e-16 * std::max(1.0, std::abs(mid))) {
                break;
            }
        }
        log_delta = 0.5 * (lo + hi);
    }

    const double delta = std::exp(log_delta);
    ZonalFn moved = transport(f, delta, 1, p);
    result.residual = com_vector(moved.map([p](double, double v) { return std::pow(std::abs(v), p); }));
    // Canonical form delta <= 1: gamma_{delta, e} = gamma_{1/delta, -e}.
    if (delta > 1.0) {
        result.delta = 1.0 / delta;
        result.xi_sign = -1;
    } else {
        result.delta = delta;
        result.xi_sign = 1;
    }
    result.transported = std::move(moved);
    return result;
}

} // namespace hls
