#include "hls/zonal.hpp"

#include "hls/constants.hpp"
#include "hls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace hls {

namespace {

constexpr double kUnderflowFlush = 1e-300;

void require_same_basis(const ZonalFn& f, const ZonalFn& g, const char* op)
{
    if (f.basis() != g.basis()) {
        if (f.dim() != g.dim() || f.size() != g.size()) {
            throw UsageError(std::string(op) + ": zonal functions live on different dimensions or node sets");
        }
    }
}

// Largest weighted component |a_l| sqrt(h_l) |E_l| among the last two
// degrees, relative to the overall peak.
double tail_ratio(const ZonalFn& f, const std::vector<double>* eigen)
{
    const auto& a = f.coeffs();
    const int last = static_cast<int>(a.size()) - 1;
    double peak = 0.0;
    double tail = 0.0;
    for (int l = 0; l <= last; ++l) {
        const double weight = eigen ? std::abs((*eigen)[l]) : 1.0;
        const double size = std::abs(a[l]) * std::sqrt(f.basis()->norm(l)) * weight;
        peak = std::max(peak, size);
        if (l >= last - 1) {
            tail = std::max(tail, size);
        }
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

void require_resolved(const ZonalFn& f, const std::vector<double>& eigen, const char* op)
{
    const double ratio = tail_ratio(f, &eigen);
    if (ratio > kSpectralTailTolerance) {
        throw ResolutionError(std::string(op) + ": spectral tail ratio " + std::to_string(ratio)
                              + " exceeds tolerance; increase the node count");
    }
}

std::vector<double> weighted(const std::vector<double>& a, const std::vector<double>& eigen)
{
    std::vector<double> out(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        out[l] = a[l] * eigen[l];
    }
    return out;
}

} // namespace

std::shared_ptr<const ZonalBasis> ZonalBasis::get(int dim, int nodes)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const ZonalBasis>> cache;
    const std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{dim, nodes}];
    if (!slot) {
        slot = std::make_shared<const ZonalBasis>(dim, nodes);
    }
    return slot;
}

ZonalBasis::ZonalBasis(int dim, int nodes)
    : rule_(gauss_gegenbauer_rule(dim, nodes)), degree_(nodes / 2), shell_area_(sphere_area(dim - 1))
{
    const int k_count = size();
    profile_.resize(static_cast<std::size_t>(degree_ + 1) * k_count);
    derivative_.resize(profile_.size());
    norms_.resize(degree_ + 1);
    for (int l = 0; l <= degree_; ++l) {
        norms_[l] = zonal_polynomial_norm(dim, l);
    }
    // Recurrences swept once per node rather than once per (l, node).
    const double lam = 0.5 * (dim - 1);
    for (int k = 0; k < k_count; ++k) {
        const double t = rule_.nodes[k];
        for (int l = 0; l <= degree_; ++l) {
            profile_[static_cast<std::size_t>(l) * k_count + k] = zonal_polynomial(dim, l, t);
        }
        // derivative: factor * C_{l-1}^{(lam+1)}(t)
        const double factor = dim == 1 ? 2.0 : 2.0 * lam;
        double prev = 0.0;
        double curr = 1.0; // C_0^{(lam+1)}
        derivative_[k] = 0.0;
        for (int l = 1; l <= degree_; ++l) {
            derivative_[static_cast<std::size_t>(l) * k_count + k] = factor * curr;
            const int j = l; // next Gegenbauer index for parameter lam + 1
            const double mu = lam + 1.0;
            const double next = j == 1 ? 2.0 * mu * t
                                       : (2.0 * (j + mu - 1.0) * t * curr - (j + 2.0 * mu - 2.0) * prev) / j;
            prev = curr;
            curr = next;
        }
    }
}

ZonalFn::ZonalFn(std::shared_ptr<const ZonalBasis> basis, std::vector<double> values)
    : basis_(std::move(basis)), values_(std::move(values))
{
    if (!basis_) {
        throw UsageError("ZonalFn: null basis");
    }
    if (static_cast<int>(values_.size()) != basis_->size()) {
        throw UsageError("ZonalFn: value count does not match node count");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw IntegrationError("ZonalFn: non-finite sample");
        }
    }
    const int degree = basis_->degree();
    const auto& w = basis_->rule().weights;
    coeffs_.assign(degree + 1, 0.0);
    for (int l = 0; l <= degree; ++l) {
        double sum = 0.0;
        for (int k = 0; k < size(); ++k) {
            sum += w[k] * values_[k] * basis_->profile(l, k);
        }
        coeffs_[l] = sum / basis_->norm(l);
    }
}

ZonalFn ZonalFn::sample(std::shared_ptr<const ZonalBasis> basis, const std::function<double(double)>& f)
{
    const auto& t = basis->rule().nodes;
    std::vector<double> values(t.size());
    std::transform(t.begin(), t.end(), values.begin(), f);
    return ZonalFn(std::move(basis), std::move(values));
}

ZonalFn ZonalFn::sample(int dim, const std::function<double(double)>& f, int nodes)
{
    return sample(ZonalBasis::get(dim, nodes), f);
}

ZonalFn ZonalFn::from_coefficients(std::shared_ptr<const ZonalBasis> basis, const std::vector<double>& coeffs)
{
    if (static_cast<int>(coeffs.size()) > basis->degree() + 1) {
        throw UsageError("ZonalFn::from_coefficients: more coefficients than the degree cutoff allows");
    }
    std::vector<double> values(basis->size(), 0.0);
    for (int k = 0; k < basis->size(); ++k) {
        for (std::size_t l = 0; l < coeffs.size(); ++l) {
            values[k] += coeffs[l] * basis->profile(static_cast<int>(l), k);
        }
    }
    return ZonalFn(std::move(basis), std::move(values));
}

double ZonalFn::operator()(double t) const
{
    double sum = 0.0;
    for (std::size_t l = 0; l < coeffs_.size(); ++l) {
        sum += coeffs_[l] * zonal_polynomial(dim(), static_cast<int>(l), t);
    }
    return sum;
}

std::vector<double> ZonalFn::derivative_values() const
{
    std::vector<double> out(size(), 0.0);
    for (int k = 0; k < size(); ++k) {
        double sum = 0.0;
        for (std::size_t l = 1; l < coeffs_.size(); ++l) {
            sum += coeffs_[l] * basis_->profile_derivative(static_cast<int>(l), k);
        }
        out[k] = sum;
    }
    return out;
}

ZonalFn ZonalFn::map(const std::function<double(double, double)>& g) const
{
    std::vector<double> out(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) {
        out[k] = g(nodes()[k], values_[k]);
    }
    return ZonalFn(basis_, std::move(out));
}

ZonalFn ZonalFn::scaled(double c) const
{
    return map([c](double, double v) { return c * v; });
}

ZonalFn ZonalFn::times(const ZonalFn& other) const
{
    require_same_basis(*this, other, "ZonalFn::times");
    std::vector<double> out(values_.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = values_[k] * other.values_[k];
    }
    return ZonalFn(basis_, std::move(out));
}

ZonalFn ZonalFn::plus(const ZonalFn& other) const
{
    require_same_basis(*this, other, "ZonalFn::plus");
    std::vector<double> out(values_.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = values_[k] + other.values_[k];
    }
    return ZonalFn(basis_, std::move(out));
}

Expansion gegenbauer_coeffs(const ZonalFn& f, int max_degree)
{
    if (max_degree < 0 || max_degree >= f.size()) {
        throw UsageError("gegenbauer_coeffs: degree cutoff must be below the node count");
    }
    const auto& basis = *f.basis();
    const auto& w = basis.rule().weights;
    const auto& t = basis.rule().nodes;
    Expansion e;
    e.coeffs.assign(max_degree + 1, 0.0);
    for (int l = 0; l <= max_degree; ++l) {
        double sum = 0.0;
        for (int k = 0; k < f.size(); ++k) {
            const double z = l <= basis.degree() ? basis.profile(l, k) : zonal_polynomial(f.dim(), l, t[k]);
            sum += w[k] * f.values()[k] * z;
        }
        e.coeffs[l] = sum / zonal_polynomial_norm(f.dim(), l);
    }
    double peak = 0.0;
    double tail = 0.0;
    for (int l = 0; l <= max_degree; ++l) {
        const double size = std::abs(e.coeffs[l]) * std::sqrt(zonal_polynomial_norm(f.dim(), l));
        peak = std::max(peak, size);
        if (l >= max_degree - 1) {
            tail = std::max(tail, size);
        }
    }
    e.tail_ratio = peak > 0.0 ? tail / peak : 0.0;
    e.resolved = e.tail_ratio <= kSpectralTailTolerance;
    return e;
}

std::vector<HarmonicComponent> harmonic_components(const ZonalFn& f)
{
    std::vector<HarmonicComponent> out;
    out.reserve(f.coeffs().size());
    for (std::size_t l = 0; l < f.coeffs().size(); ++l) {
        const double a = f.coeffs()[l];
        out.push_back({static_cast<int>(l), a, f.basis()->shell_area() * a * a * f.basis()->norm(static_cast<int>(l))});
    }
    return out;
}

double zonal_integral(const ZonalFn& f)
{
    const auto& w = f.basis()->rule().weights;
    double sum = 0.0;
    for (int k = 0; k < f.size(); ++k) {
        sum += w[k] * f.values()[k];
    }
    return f.basis()->shell_area() * sum;
}

double zonal_power_integral(const ZonalFn& f, double p)
{
    if (!(p > 0.0)) {
        throw DomainError("zonal_power_integral: p must be positive");
    }
    const auto& w = f.basis()->rule().weights;
    double sum = 0.0;
    for (int k = 0; k < f.size(); ++k) {
        const double v = std::abs(f.values()[k]);
        if (v >= kUnderflowFlush) {
            sum += w[k] * std::pow(v, p);
        }
    }
    return f.basis()->shell_area() * sum;
}

double zonal_lp_norm(const ZonalFn& f, double p)
{
    return std::pow(zonal_power_integral(f, p), 1.0 / p);
}

double kernel_bilinear(const ZonalFn& f, const ZonalFn& g, double alpha)
{
    require_same_basis(f, g, "kernel_bilinear");
    const int degree = f.basis()->degree();
    const auto eigen = spectral_kernel(f.dim(), alpha, degree).eigenvalues;
    require_resolved(f, eigen, "kernel_bilinear");
    require_resolved(g, eigen, "kernel_bilinear");
    double sum = 0.0;
    for (int l = 0; l <= degree; ++l) {
        sum += eigen[l] * f.coeffs()[l] * g.coeffs()[l] * f.basis()->norm(l);
    }
    return f.basis()->shell_area() * sum;
}

double hls_bilinear(const ZonalFn& f, const ZonalFn& g, double lambda)
{
    if (!(lambda > 0.0 && lambda < f.dim())) {
        throw DomainError("hls_bilinear: lambda must lie in (0, N)");
    }
    const double alpha = 0.5 * lambda;
    return std::pow(2.0, -alpha) * kernel_bilinear(f, g, alpha);
}

double hls_quotient(const ZonalFn& f, double lambda)
{
    const Params params(f.dim(), lambda);
    const double norm = zonal_lp_norm(f, params.p());
    if (!(norm > 0.0)) {
        throw DomainError("hls_quotient: zero function");
    }
    return hls_bilinear(f, f, lambda) / (norm * norm);
}

ZonalFn apply_riesz(const ZonalFn& f, double lambda)
{
    if (!(lambda > 0.0 && lambda < f.dim())) {
        throw DomainError("apply_riesz: lambda must lie in (0, N)");
    }
    const double alpha = 0.5 * lambda;
    const int degree = f.basis()->degree();
    auto eigen = spectral_kernel(f.dim(), alpha, degree).eigenvalues;
    require_resolved(f, eigen, "apply_riesz");
    const double scale = std::pow(2.0, -alpha);
    for (double& e : eigen) {
        e *= scale;
    }
    const auto weighted_coeffs = weighted(f.coeffs(), eigen);
    return ZonalFn::from_coefficients(f.basis(), weighted_coeffs);
}

double dirichlet_integral(const ZonalFn& u)
{
    const auto du = u.derivative_values();
    const auto& rule = u.basis()->rule();
    double sum = 0.0;
    for (int k = 0; k < u.size(); ++k) {
        const double t = rule.nodes[k];
        sum += rule.weights[k] * (1.0 - t) * (1.0 + t) * du[k] * du[k];
    }
    return u.basis()->shell_area() * sum;
}

double conformal_energy(const ZonalFn& u)
{
    const int n = u.dim();
    const double mass = 0.25 * n * (n - 2);
    return dirichlet_integral(u) + mass * zonal_power_integral(u, 2.0);
}

double sobolev_quotient(const ZonalFn& u)
{
    const int n = u.dim();
    if (n < 3) {
        throw DomainError("sobolev_quotient: requires N >= 3");
    }
    const double q = 2.0 * n / (n - 2.0);
    const double norm = zonal_lp_norm(u, q);
    if (!(norm > 0.0)) {
        throw DomainError("sobolev_quotient: zero function");
    }
    return conformal_energy(u) / (norm * norm);
}

IdentitySides gsr_zonal_check(const ZonalFn& u)
{
    const auto du = u.derivative_values();
    const auto& rule = u.basis()->rule();
    const int n = u.dim();
    double lhs = 0.0;
    double rhs = 0.0;
    for (int k = 0; k < u.size(); ++k) {
        const double t = rule.nodes[k];
        const double v = u.values()[k];
        const double sin2 = (1.0 - t) * (1.0 + t);
        const double grad_tu = v + t * du[k];
        lhs += rule.weights[k] * sin2 * grad_tu * grad_tu;
        rhs += rule.weights[k] * t * t * (sin2 * du[k] * du[k] + n * v * v);
    }
    const double area = u.basis()->shell_area();
    return {area * lhs, area * rhs};
}

ZonalFn hls_optimizer(int n, double lambda, double r, int nodes)
{
    const Params params(n, lambda);
    if (!(std::abs(r) < 1.0)) {
        throw DomainError("hls_optimizer: |r| < 1 is required");
    }
    const double exponent = -(2.0 * n - lambda) / 2.0;
    return ZonalFn::sample(n, [=](double t) { return std::pow(1.0 - r * t, exponent); }, nodes);
}

ZonalFn sobolev_optimizer(int n, double r, int nodes)
{
    if (n < 3) {
        throw DomainError("sobolev_optimizer: requires N >= 3");
    }
    if (!(std::abs(r) < 1.0)) {
        throw DomainError("sobolev_optimizer: |r| < 1 is required");
    }
    const double exponent = -(n - 2.0) / 2.0;
    return ZonalFn::sample(n, [=](double t) { return std::pow(1.0 - r * t, exponent); }, nodes);
}

ZonalFn random_nonnegative_zonal(int dim, Rng& rng, int index, int nodes)
{
    switch (index % 3) {
    case 0: {
        double c[5];
        for (double& x : c) {
            x = rng.normal();
        }
        const double eps = rng.uniform(0.01, 1.0);
        return ZonalFn::sample(dim, [=](double t) {
            const double q = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
            return q * q + eps;
        }, nodes);
    }
    case 1: {
        const double w1 = rng.uniform(0.1, 1.0);
        const double w2 = rng.uniform(0.1, 1.0);
        const double r1 = rng.uniform(0.0, 0.8) * rng.sign();
        const double r2 = rng.uniform(0.0, 0.8) * rng.sign();
        const double b = rng.uniform(0.5, 3.0);
        return ZonalFn::sample(dim, [=](double t) {
            return w1 * std::pow(1.0 - r1 * t, -b) + w2 * std::pow(1.0 - r2 * t, -b);
        }, nodes);
    }
    default: {
        double c[4];
        for (double& x : c) {
            x = 0.5 * rng.normal();
        }
        return ZonalFn::sample(dim, [=](double t) {
            return std::exp(c[0] + t * (c[1] + t * (c[2] + t * c[3])));
        }, nodes);
    }
    }
}

ZonalFn random_polynomial_zonal(int dim, Rng& rng, int degree, int nodes)
{
    std::vector<double> c(degree + 1);
    for (double& x : c) {
        x = rng.normal();
    }
    return ZonalFn::sample(dim, [c](double t) {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            v = v * t + *it;
        }
        return v;
    }, nodes);
}

} // namespace hls
