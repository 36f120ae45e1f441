#include "hls/geometry.hpp"

#include "hls/errors.hpp"
#include "hls/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace hls {

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw UsageError("dot: length mismatch");
    }
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords))
{
    if (coords_.size() < 2) {
        throw UsageError("SpherePoint: need at least two coordinates");
    }
    const double norm_sq = dot(coords_, coords_);
    if (!(std::abs(norm_sq - 1.0) <= 1e-14 * coords_.size())) {
        throw DomainError("SpherePoint: coordinates are not on the unit sphere");
    }
}

SpherePoint SpherePoint::normalized(std::vector<double> v)
{
    const double norm = std::sqrt(dot(v, v));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DomainError("SpherePoint::normalized: zero or non-finite vector");
    }
    for (double& x : v) {
        x /= norm;
    }
    return SpherePoint(std::move(v));
}

SpherePoint SpherePoint::pole(int n, int sign)
{
    std::vector<double> c(n + 1, 0.0);
    c.back() = sign >= 0 ? 1.0 : -1.0;
    return SpherePoint(std::move(c));
}

SpherePoint stereo(std::span<const double> x)
{
    const double r2 = dot(x, x);
    const double denom = 1.0 + r2;
    std::vector<double> omega(x.size() + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        omega[i] = 2.0 * x[i] / denom;
    }
    omega.back() = (1.0 - r2) / denom;
    // Renormalize the rounding drift so the SpherePoint invariant holds.
    return SpherePoint::normalized(std::move(omega));
}

std::vector<double> stereo_inv(const SpherePoint& omega)
{
    const auto& w = omega.coords();
    const int n = omega.dim();
    double equator_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        equator_sq += w[i] * w[i];
    }
    const double last = w.back();
    // 1 + omega_{N+1}, computed without cancellation on the southern half.
    const double shifted = last >= 0.0 ? 1.0 + last : equator_sq / (1.0 - last);
    if (!(shifted > 0.0)) {
        throw PoleError("stereo_inv: undefined at the south pole");
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = w[i] / shifted;
    }
    return x;
}

double stereo_jacobian(std::span<const double> x)
{
    return std::pow(2.0 / (1.0 + dot(x, x)), static_cast<double>(x.size()));
}

ChordalSides chordal_factorization(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw UsageError("chordal_factorization: dimension mismatch");
    }
    const SpherePoint sx = stereo(x);
    const SpherePoint sy = stereo(y);
    double lhs = 0.0;
    for (std::size_t i = 0; i < sx.coords().size(); ++i) {
        const double d = sx[i] - sy[i];
        lhs += d * d;
    }
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        dist_sq += d * d;
    }
    const double rhs = (2.0 / (1.0 + dot(x, x))) * dist_sq * (2.0 / (1.0 + dot(y, y)));
    return {lhs, rhs};
}

ConformalMap::ConformalMap(double delta, SpherePoint xi) : delta_(delta), xi_(std::move(xi))
{
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("ConformalMap: delta must be positive and finite");
    }
}

double conformal_axis_image(double delta, double s)
{
    const double d2 = delta * delta;
    const double plus = 1.0 + s;
    const double minus = 1.0 - s;
    return (plus - d2 * minus) / (plus + d2 * minus);
}

double conformal_jacobian_axial(int n, double delta, double s)
{
    const double denom = (1.0 + s) + delta * delta * (1.0 - s);
    return std::pow(2.0 * delta / denom, static_cast<double>(n));
}

SpherePoint conformal_map_apply(const ConformalMap& m, const SpherePoint& omega)
{
    const auto& xi = m.xi().coords();
    const auto& w = omega.coords();
    if (xi.size() != w.size()) {
        throw UsageError("conformal_map_apply: dimension mismatch");
    }
    const double s = dot(w, xi);
    const double d2 = m.delta() * m.delta();
    const double denom = (1.0 + s) + d2 * (1.0 - s);
    const double tangential = 2.0 * m.delta() / denom;
    const double axial = ((1.0 + s) - d2 * (1.0 - s)) / denom;
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = tangential * (w[i] - s * xi[i]) + axial * xi[i];
    }
    return SpherePoint::normalized(std::move(out));
}

double conformal_jacobian(const ConformalMap& m, const SpherePoint& omega)
{
    if (omega.coords().size() != m.xi().coords().size()) {
        throw UsageError("conformal_jacobian: dimension mismatch");
    }
    return conformal_jacobian_axial(omega.dim(), m.delta(), dot(omega.coords(), m.xi().coords()));
}

ZonalFn transport(const ZonalFn& f, double delta, int xi_sign, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("transport: exponent must be positive");
    }
    if (!(delta > 0.0)) {
        throw DomainError("transport: delta must be positive");
    }
    const double sigma = xi_sign >= 0 ? 1.0 : -1.0;
    const double inv = 1.0 / delta;
    const int n = f.dim();
    return ZonalFn::sample(f.basis(), [&](double t) {
        const double s = sigma * t;
        const double jac = conformal_jacobian_axial(n, inv, s);
        const double source = sigma * conformal_axis_image(inv, s);
        return std::pow(jac, 1.0 / r) * f(source);
    });
}

SphereFunction transport(SphereFunction f, const ConformalMap& m, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("transport: exponent must be positive");
    }
    const ConformalMap inv = m.inverse();
    return [f = std::move(f), inv, r](const SpherePoint& omega) {
        return std::pow(conformal_jacobian(inv, omega), 1.0 / r) * f(conformal_map_apply(inv, omega));
    };
}

double RadialFn::operator()(double r) const
{
    if (exact) {
        return exact(r);
    }
    const std::size_t count = radii.size();
    if (count < 4) {
        throw UsageError("RadialFn: need at least four samples to interpolate");
    }
    if (r <= radii.front()) {
        return values.front();
    }
    if (r >= radii.back()) {
        return values.back() * std::pow(radii.back() / r, decay);
    }
    // Cubic Lagrange in log r on the four surrounding samples.
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    std::size_t hi = static_cast<std::size_t>(it - radii.begin());
    std::size_t start = hi >= 2 ? hi - 2 : 0;
    start = std::min(start, count - 4);
    const double s = std::log(r);
    double sum = 0.0;
    for (std::size_t i = start; i < start + 4; ++i) {
        double basis = 1.0;
        const double si = std::log(radii[i]);
        for (std::size_t j = start; j < start + 4; ++j) {
            if (j != i) {
                const double sj = std::log(radii[j]);
                basis *= (s - sj) / (si - sj);
            }
        }
        sum += basis * values[i];
    }
    return sum;
}

std::vector<double> geometric_grid(const RadialGrid& grid)
{
    if (!(grid.r_min > 0.0 && grid.r_max > grid.r_min) || grid.points < 8) {
        throw UsageError("geometric_grid: invalid grid specification");
    }
    std::vector<double> radii(grid.points);
    const double lo = std::log(grid.r_min);
    const double step = (std::log(grid.r_max) - lo) / (grid.points - 1);
    for (int k = 0; k < grid.points; ++k) {
        radii[k] = std::exp(lo + step * k);
    }
    return radii;
}

RadialFn make_radial(int dim, std::function<double(double)> f, double decay, const RadialGrid& grid)
{
    if (dim < 1) {
        throw UsageError("make_radial: dimension must be >= 1");
    }
    RadialFn F;
    F.dim = dim;
    F.radii = geometric_grid(grid);
    F.values.resize(F.radii.size());
    for (std::size_t k = 0; k < F.radii.size(); ++k) {
        F.values[k] = f(F.radii[k]);
        if (!std::isfinite(F.values[k])) {
            throw IntegrationError("make_radial: non-finite sample");
        }
    }
    F.decay = decay;
    F.exact = std::move(f);
    return F;
}

RadialFn push_to_plane(const ZonalFn& f, double p, const RadialGrid& grid)
{
    if (!(p > 0.0)) {
        throw DomainError("push_to_plane: p must be positive");
    }
    const int n = f.dim();
    const double power = n / p;
    auto lifted = [f, power](double r) {
        const double r2 = r * r;
        const double t = (1.0 - r2) / (1.0 + r2);
        return std::pow(2.0 / (1.0 + r2), power) * f(t);
    };
    return make_radial(n, lifted, 2.0 * power, grid);
}

ZonalFn lift_to_sphere(const RadialFn& F, double p, std::shared_ptr<const ZonalBasis> basis)
{
    if (!(p > 0.0)) {
        throw DomainError("lift_to_sphere: p must be positive");
    }
    if (F.dim != basis->dim()) {
        throw UsageError("lift_to_sphere: radial and sphere dimensions differ");
    }
    const double power = -F.dim / p;
    return ZonalFn::sample(std::move(basis), [&](double t) {
        const double r = std::sqrt((1.0 - t) / (1.0 + t));
        // J_S(x) = (2/(1+r^2))^N = (1+t)^N at r = |x|.
        return F(r) * std::pow(1.0 + t, power);
    });
}

double radial_lp_norm(const RadialFn& F, double p)
{
    if (!(p > 0.0)) {
        throw DomainError("radial_lp_norm: p must be positive");
    }
    const int n = F.dim;
    const std::size_t count = F.radii.size();
    if (count < 8) {
        throw UsageError("radial_lp_norm: grid too small");
    }
    if (!(F.decay * p > n)) {
        throw IntegrationError("radial_lp_norm: decay too slow for a finite p-norm");
    }
    const double h = std::log(F.radii[1] / F.radii[0]);
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double g = std::pow(std::abs(F.values[k]), p) * std::pow(F.radii[k], n);
        sum += (k == 0 || k + 1 == count) ? 0.5 * g : g;
    }
    sum *= h;
    const double r0 = F.radii.front();
    const double r1 = F.radii.back();
    sum += std::pow(std::abs(F.values.front()), p) * std::pow(r0, n) / n;
    sum += std::pow(std::abs(F.values.back()), p) * std::pow(r1, n) / (F.decay * p - n);
    return std::pow(sphere_area(n - 1) * sum, 1.0 / p);
}

double radial_dirichlet_energy(const RadialFn& F)
{
    const int n = F.dim;
    if (n < 3) {
        throw DomainError("radial_dirichlet_energy: requires N >= 3");
    }
    const std::size_t count = F.radii.size();
    if (count < 8) {
        throw UsageError("radial_dirichlet_energy: grid too small");
    }
    if (!(2.0 * F.decay + 2.0 - n > 0.0)) {
        throw IntegrationError("radial_dirichlet_energy: decay too slow for finite energy");
    }
    const double h = std::log(F.radii[1] / F.radii[0]);
    const double shift = std::exp(h);

    // F at r_k e^{jh}, j in [-2, 2]; off-grid values come from the exact
    // evaluator when present, otherwise from one-sided stencils below.
    auto sample = [&](std::size_t k, int j) {
        const long idx = static_cast<long>(k) + j;
        if (idx >= 0 && idx < static_cast<long>(count)) {
            return F.values[static_cast<std::size_t>(idx)];
        }
        return F(F.radii[k] * std::pow(shift, j));
    };
    auto log_derivative = [&](std::size_t k) {
        const bool interior = k >= 2 && k + 2 < count;
        if (interior || F.exact) {
            return (sample(k, -2) - 8.0 * sample(k, -1) + 8.0 * sample(k, 1) - sample(k, 2)) / (12.0 * h);
        }
        const auto& v = F.values;
        if (k < 2) {
            const std::size_t b = k;
            // fourth-order forward stencil
            return (-25.0 * v[b] + 48.0 * v[b + 1] - 36.0 * v[b + 2] + 16.0 * v[b + 3] - 3.0 * v[b + 4]) / (12.0 * h);
        }
        const std::size_t b = k;
        return (25.0 * v[b] - 48.0 * v[b - 1] + 36.0 * v[b - 2] - 16.0 * v[b - 3] + 3.0 * v[b - 4]) / (12.0 * h);
    };

    // int F'(r)^2 r^{N-1} dr = int (dF/ds)^2 r^{N-2} ds
    double sum = 0.0;
    double first = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double d = log_derivative(k);
        if (k == 0) {
            first = d;
        }
        const double g = d * d * std::pow(F.radii[k], n - 2);
        sum += (k == 0 || k + 1 == count) ? 0.5 * g : g;
    }
    sum *= h;
    const double r0 = F.radii.front();
    const double r1 = F.radii.back();
    // smooth at the origin: dF/ds ~ r^2
    sum += first * first * std::pow(r0, n - 2) / (n + 2);
    const double d = F.decay;
    sum += d * d * F.values.back() * F.values.back() * std::pow(r1, n - 2) / (2.0 * d + 2.0 - n);
    return sphere_area(n - 1) * sum;
}

} // namespace hls

namespace hls {

double finite_difference_jacobian(const std::function<SpherePoint(const SpherePoint&)>& map, const SpherePoint& omega,
                                  double step)
{
    const int n = omega.dim();
    const auto& w = omega.coords();
    // Tangent frame: Gram-Schmidt of the standard basis against omega.
    std::vector<Eigen::VectorXd> frame;
    const Eigen::Map<const Eigen::VectorXd> base(w.data(), n + 1);
    for (int e = 0; e <= n && static_cast<int>(frame.size()) < n; ++e) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n + 1, e);
        v -= v.dot(base) * base;
        for (const auto& u : frame) {
            v -= v.dot(u) * u;
        }
        if (v.norm() > 1e-3) {
            frame.push_back(v.normalized());
        }
    }
    Eigen::MatrixXd d(n + 1, n);
    for (int i = 0; i < n; ++i) {
        auto moved = [&](double eps) {
            std::vector<double> p(n + 1);
            for (int k = 0; k <= n; ++k) {
                p[k] = std::cos(eps) * w[k] + std::sin(eps) * frame[i][k];
            }
            return map(SpherePoint::normalized(std::move(p)));
        };
        const SpherePoint plus = moved(step);
        const SpherePoint minus = moved(-step);
        for (int k = 0; k <= n; ++k) {
            d(k, i) = (plus[k] - minus[k]) / (2.0 * step);
        }
    }
    return std::sqrt((d.transpose() * d).determinant());
}

SpherePoint random_sphere_point(int n, Rng& rng)
{
    std::vector<double> v(n + 1);
    for (double& x : v) {
        x = rng.normal();
    }
    return SpherePoint::normalized(std::move(v));
}

} // namespace hls
