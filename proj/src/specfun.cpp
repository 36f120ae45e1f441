#include "hls/specfun.hpp"

#include "hls/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace hls {

double log_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
    }
    return std::lgamma(x);
}

double pochhammer(double a, int n)
{
    if (n < 0) {
        throw DomainError("pochhammer: negative order");
    }
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
        prod *= a + k;
    }
    return prod;
}

double gegenbauer(int l, double lam, double t)
{
    if (l < 0) {
        throw DomainError("gegenbauer: degree must be non-negative");
    }
    if (!(lam > -0.5)) {
        throw DomainError("gegenbauer: lambda > -1/2 is required");
    }
    if (l == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double curr = 2.0 * lam * t;
    for (int k = 2; k <= l; ++k) {
        const double next = (2.0 * (k + lam - 1.0) * t * curr - (k + 2.0 * lam - 2.0) * prev) / k;
        prev = curr;
        curr = next;
    }
    return curr;
}

double chebyshev_t(int l, double t)
{
    if (l < 0) {
        throw DomainError("chebyshev_t: degree must be non-negative");
    }
    if (l == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double curr = t;
    for (int k = 2; k <= l; ++k) {
        const double next = 2.0 * t * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

double zonal_polynomial(int n, int l, double t)
{
    if (n < 1) {
        throw DomainError("zonal_polynomial: dimension must be >= 1");
    }
    if (n == 1) {
        return l == 0 ? 1.0 : 2.0 * chebyshev_t(l, t) / l;
    }
    return gegenbauer(l, 0.5 * (n - 1), t);
}

double zonal_polynomial_derivative(int n, int l, double t)
{
    if (n < 1) {
        throw DomainError("zonal_polynomial_derivative: dimension must be >= 1");
    }
    if (l == 0) {
        return 0.0;
    }
    // d/dt C_l^{(lam)} = 2 lam C_{l-1}^{(lam+1)}; for n = 1, d/dt (2/l) T_l = 2 U_{l-1}.
    const double lam = 0.5 * (n - 1);
    const double factor = n == 1 ? 2.0 : 2.0 * lam;
    return factor * gegenbauer(l - 1, lam + 1.0, t);
}

double zonal_polynomial_norm(int n, int l)
{
    if (n < 1 || l < 0) {
        throw DomainError("zonal_polynomial_norm: invalid arguments");
    }
    constexpr double pi = std::numbers::pi;
    if (n == 1) {
        return l == 0 ? pi : 2.0 * pi / (static_cast<double>(l) * l);
    }
    const double lam = 0.5 * (n - 1);
    const double log_value = (1.0 - 2.0 * lam) * std::numbers::ln2 + std::lgamma(l + 2.0 * lam)
                             - std::lgamma(l + 1.0) - 2.0 * std::lgamma(lam);
    return pi * std::exp(log_value) / (l + lam);
}

double sphere_area(int n)
{
    if (n < 0) {
        throw DomainError("sphere_area: dimension must be non-negative");
    }
    const double half = 0.5 * (n + 1);
    return 2.0 * std::exp(half * std::log(std::numbers::pi) - std::lgamma(half));
}

double zonal_weight_total(int n)
{
    if (n < 1) {
        throw DomainError("zonal_weight_total: dimension must be >= 1");
    }
    return std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(0.5 * n) - std::lgamma(0.5 * (n + 1)));
}

namespace {

// Evaluated in long double (x87 extended on this target): the weights near
// the endpoints otherwise lose ~1e-13 through the recurrence.
using wide = long double;

struct JacobiEval {
    wide value;    // P_k(x)
    wide previous; // P_{k-1}(x)
};

JacobiEval jacobi_eval(int k, wide a, wide b, wide x)
{
    wide prev = 1.0L;
    wide curr = 0.5L * (a - b) + 0.5L * (a + b + 2.0L) * x;
    if (k == 0) {
        return {1.0L, 0.0L};
    }
    for (int j = 2; j <= k; ++j) {
        const wide s = 2.0L * j + a + b;
        const wide c0 = 2.0L * j * (j + a + b) * (s - 2.0L);
        const wide c1 = (s - 1.0L) * ((s * (s - 2.0L)) * x + a * a - b * b);
        const wide c2 = 2.0L * (j + a - 1.0L) * (j + b - 1.0L) * s;
        const wide next = (c1 * curr - c2 * prev) / c0;
        prev = curr;
        curr = next;
    }
    return {curr, prev};
}

// (1 - x^2) P_k'(x), free of the endpoint division.
wide jacobi_scaled_derivative(int k, wide a, wide b, wide x, const JacobiEval& e)
{
    const wide s = 2.0L * k + a + b;
    return (k * ((a - b) - s * x) * e.value + 2.0L * (k + a) * (k + b) * e.previous) / s;
}

} // namespace

JacobiRule gauss_jacobi_rule(double a, double b, int k)
{
    if (k < 1) {
        throw UsageError("gauss_jacobi_rule: node count must be >= 1");
    }
    if (!(a > -1.0) || !(b > -1.0)) {
        throw DomainError("gauss_jacobi_rule: exponents must exceed -1");
    }
    constexpr double pi = std::numbers::pi;
    constexpr int max_iterations = 100;
    constexpr double tolerance = 1e-15;

    JacobiRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(k);
    rule.weights.resize(k);

    // Normalization 2^{a+b+1} Gamma(k+a+1) Gamma(k+b+1) / (Gamma(k+a+b+1) k!).
    const double log_c = (a + b + 1.0) * std::numbers::ln2 + std::lgamma(k + a + 1.0) + std::lgamma(k + b + 1.0)
                         - std::lgamma(k + a + b + 1.0) - std::lgamma(k + 1.0);
    const wide c = std::exp(static_cast<wide>(log_c));

    for (int i = 1; i <= k; ++i) {
        // Roots ordered by decreasing x; theta associated with the (1-x)^a end.
        wide x = std::cos((i + 0.5 * a - 0.25) * pi / (k + 0.5 * (a + b + 1.0)));
        for (int iter = 0; iter < max_iterations; ++iter) {
            const JacobiEval e = jacobi_eval(k, a, b, x);
            const wide one_minus_x2 = (1.0L - x) * (1.0L + x);
            const wide deriv = jacobi_scaled_derivative(k, a, b, x, e) / one_minus_x2;
            const wide dx = e.value / deriv;
            x -= dx;
            if (std::abs(dx) <= tolerance * std::max<wide>(1.0L, std::abs(x))) {
                break;
            }
        }
        // One more step at full extended precision.
        {
            const JacobiEval e = jacobi_eval(k, a, b, x);
            x -= e.value * (1.0L - x) * (1.0L + x) / jacobi_scaled_derivative(k, a, b, x, e);
        }
        const JacobiEval e = jacobi_eval(k, a, b, x);
        const wide one_minus_x2 = (1.0L - x) * (1.0L + x);
        const wide scaled = jacobi_scaled_derivative(k, a, b, x, e);
        const int slot = k - i;
        rule.nodes[slot] = static_cast<double>(x);
        rule.weights[slot] = static_cast<double>(c * one_minus_x2 / (scaled * scaled));
    }

    if (a == b) {
        // Symmetric weight: mirror so that odd moments vanish exactly.
        for (int i = 0; i < k / 2; ++i) {
            const int j = k - 1 - i;
            const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
            const double weight = 0.5 * (rule.weights[j] + rule.weights[i]);
            rule.nodes[i] = -node;
            rule.nodes[j] = node;
            rule.weights[i] = weight;
            rule.weights[j] = weight;
        }
        if (k % 2 == 1) {
            rule.nodes[k / 2] = 0.0;
        }
    }

    // lgamma at k ~ 256 is ~1e3 in size, which leaves ~1e-13 in c; pin the
    // zeroth moment, whose Gamma arguments are small.
    const double moment = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0)
                                   - std::lgamma(a + b + 2.0));
    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    for (double& w : rule.weights) {
        w *= moment / total;
    }

    for (int i = 0; i < k; ++i) {
        const bool inside = rule.nodes[i] > -1.0 && rule.nodes[i] < 1.0;
        const bool ordered = i == 0 || rule.nodes[i] > rule.nodes[i - 1];
        if (!inside || !ordered || !(rule.weights[i] > 0.0) || !std::isfinite(rule.weights[i])) {
            throw InternalError("gauss_jacobi_rule: Newton iteration failed to isolate all roots");
        }
    }
    return rule;
}

double QuadratureRule::weight_sum() const
{
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

QuadratureRule gauss_gegenbauer_rule(int n, int k)
{
    if (n < 1) {
        throw DomainError("gauss_gegenbauer_rule: dimension must be >= 1");
    }
    if (k < 1) {
        throw UsageError("gauss_gegenbauer_rule: node count must be >= 1");
    }
    const double a = 0.5 * (n - 2);
    JacobiRule jr = gauss_jacobi_rule(a, a, k);
    QuadratureRule rule;
    rule.dim = n;
    rule.nodes = std::move(jr.nodes);
    rule.weights = std::move(jr.weights);
    return rule;
}

} // namespace hls
