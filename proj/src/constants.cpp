#include "hls/constants.hpp"

#include "hls/errors.hpp"
#include "hls/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hls {

namespace {

constexpr double pi = std::numbers::pi;
const double log_pi = std::log(pi);

void require_lambda(int n, double lambda)
{
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
    if (!(lambda > 0.0 && lambda < n)) {
        throw DomainError("lambda must lie in (0, N), got " + std::to_string(lambda));
    }
}

void require_order(int n, double s)
{
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
    if (!(s > 0.0 && s < 0.5 * n)) {
        throw DomainError("s must lie in (0, N/2), got " + std::to_string(s));
    }
}

} // namespace

Params::Params(int n, double lambda) : n_(n), lambda_(lambda)
{
    require_lambda(n, lambda);
}

Params Params::from_sobolev_order(int n, double s)
{
    require_order(n, s);
    return Params(n, n - 2.0 * s);
}

double hls_sharp_constant(int n, double lambda)
{
    require_lambda(n, lambda);
    const double log_value = 0.5 * lambda * log_pi + std::lgamma(0.5 * (n - lambda)) - std::lgamma(n - 0.5 * lambda)
                             + (1.0 - lambda / n) * (std::lgamma(n) - std::lgamma(0.5 * n));
    return std::exp(log_value);
}

double sobolev_sharp_constant(int n, double s)
{
    require_order(n, s);
    const double log_value = 2.0 * s * std::numbers::ln2 + s * log_pi + std::lgamma(0.5 * (n + 2.0 * s))
                             - std::lgamma(0.5 * (n - 2.0 * s))
                             + (2.0 * s / n) * (std::lgamma(0.5 * n) - std::lgamma(n));
    return std::exp(log_value);
}

double sobolev_sphere_constant(int n)
{
    if (n < 3) {
        throw DomainError("sobolev_sphere_constant: requires N >= 3");
    }
    return 0.25 * n * (n - 2) * std::pow(sphere_area(n), 2.0 / n);
}

double green_coeff(int n, double s)
{
    require_order(n, s);
    const double log_value = -2.0 * s * std::numbers::ln2 - 0.5 * n * log_pi + std::lgamma(0.5 * (n - 2.0 * s))
                             - std::lgamma(s);
    return std::exp(log_value);
}

double funk_hecke_kappa(int n, int l)
{
    if (n < 1 || l < 0) {
        throw DomainError("funk_hecke_kappa: requires n >= 1, l >= 0");
    }
    if (n == 1) {
        return l == 0 ? 2.0 : static_cast<double>(l);
    }
    // (4 pi)^{(N-1)/2} l! Gamma((N-1)/2) / (l+N-2)!
    const double log_value = 0.5 * (n - 1) * std::log(4.0 * pi) + std::lgamma(l + 1.0) + std::lgamma(0.5 * (n - 1))
                             - std::lgamma(l + n - 1.0);
    return std::exp(log_value);
}

double eigenvalue_kappa(int n)
{
    if (n < 1) {
        throw DomainError("eigenvalue_kappa: requires n >= 1");
    }
    if (n == 1) {
        return 2.0 * std::sqrt(pi);
    }
    // 2^{2(N-1)} pi^{(N-1)/2} Gamma((N-1)/2) Gamma(N/2) / (N-2)!
    const double log_value = 2.0 * (n - 1) * std::numbers::ln2 + 0.5 * (n - 1) * log_pi
                             + std::lgamma(0.5 * (n - 1)) + std::lgamma(0.5 * n) - std::lgamma(n - 1.0);
    return std::exp(log_value);
}

double eigenvalue_E(int n, double alpha, int l)
{
    if (n < 1 || l < 0) {
        throw DomainError("eigenvalue_E: requires n >= 1, l >= 0");
    }
    if (!(alpha > -1.0 && alpha < 0.5 * n)) {
        throw DomainError("eigenvalue_E: alpha must lie in (-1, N/2), got " + std::to_string(alpha));
    }
    const double e0 = eigenvalue_kappa(n) * std::exp(-alpha * std::numbers::ln2 + std::lgamma(0.5 * n - alpha)
                                                     - std::lgamma(n - alpha));
    double value = e0;
    for (int k = 0; k < l; ++k) {
        value *= (k + alpha) / (k + n - alpha);
    }
    return value;
}

double eigenvalue_E_gamma_form(int n, double alpha, int l)
{
    if (n < 1 || l < 0) {
        throw DomainError("eigenvalue_E_gamma_form: requires n >= 1, l >= 0");
    }
    if (!(alpha > -1.0 && alpha < 0.5 * n)) {
        throw DomainError("eigenvalue_E_gamma_form: alpha must lie in (-1, N/2)");
    }
    if (alpha >= 0.0 && alpha == std::floor(alpha)) {
        throw PoleError("eigenvalue_E_gamma_form: alpha must not be a non-negative integer");
    }
    const double sign_l = (l % 2 == 0) ? 1.0 : -1.0;
    return eigenvalue_kappa(n) * std::pow(2.0, -alpha) * sign_l * std::tgamma(1.0 - alpha) * std::tgamma(0.5 * n - alpha)
           / (std::tgamma(1.0 - l - alpha) * std::tgamma(l + n - alpha));
}

SpectralKernel spectral_kernel(int n, double alpha, int lmax)
{
    if (lmax < 0) {
        throw UsageError("spectral_kernel: lmax must be >= 0");
    }
    SpectralKernel kernel;
    kernel.n = n;
    kernel.alpha = alpha;
    kernel.eigenvalues.reserve(lmax + 1);
    const double e0 = eigenvalue_E(n, alpha, 0);
    double value = e0;
    for (int l = 0; l <= lmax; ++l) {
        kernel.eigenvalues.push_back(value);
        value *= (l + alpha) / (l + n - alpha);
    }
    return kernel;
}

ZonalKernel power_kernel(double alpha)
{
    return {[alpha](double, double one_minus_t) { return std::pow(one_minus_t, -alpha); }, alpha};
}

double funk_hecke_quadrature(int n, const ZonalKernel& kernel, int l, int nodes)
{
    if (n < 1 || l < 0) {
        throw DomainError("funk_hecke_quadrature: requires n >= 1, l >= 0");
    }
    const double base = 0.5 * (n - 2);
    const double sigma = kernel.endpoint_exponent;
    if (!(base - sigma > -1.0)) {
        throw DomainError("funk_hecke_quadrature: kernel not integrable against the zonal weight");
    }
    const JacobiRule rule = gauss_jacobi_rule(base - sigma, base, nodes);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t = rule.nodes[k];
        const double one_minus_t = 1.0 - t;
        const double regular = kernel.value(t, one_minus_t) * (sigma == 0.0 ? 1.0 : std::pow(one_minus_t, sigma));
        if (!std::isfinite(regular)) {
            throw IntegrationError("funk_hecke_quadrature: non-finite kernel sample at t = " + std::to_string(t));
        }
        sum += rule.weights[k] * regular * zonal_polynomial(n, l, t);
    }
    return funk_hecke_kappa(n, l) * sum;
}

double gegenbauer_integral(int n, double beta, int l)
{
    if (n < 1 || l < 0) {
        throw DomainError("gegenbauer_integral: requires n >= 1, l >= 0");
    }
    if (!(beta > -1.0)) {
        throw DomainError("gegenbauer_integral: beta > -1 is required");
    }
    const double half_n = 0.5 * n;
    // (-1)^l Gamma(c) / Gamma(c - l) = (1 - c)_l with c = 2 - N/2 + beta.
    const double c = 2.0 - half_n + beta;
    const double signed_part = pochhammer(1.0 - c, l);

    double log_value = (half_n + beta) * std::numbers::ln2 + std::lgamma(1.0 + beta) + std::lgamma(half_n)
                       - std::lgamma(l + 1.0) - std::lgamma(l + half_n + 1.0 + beta);
    if (n >= 2) {
        log_value += std::lgamma(l + n - 1.0) - std::lgamma(n - 1.0);
    } else if (l >= 1) {
        // N = 1: Gamma(N-1) in the denominator becomes 1/2.
        log_value += std::lgamma(static_cast<double>(l)) + std::numbers::ln2;
    }
    return signed_part * std::exp(log_value);
}

} // namespace hls
