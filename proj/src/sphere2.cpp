#include "hls/sphere2.hpp"

#include "hls/errors.hpp"
#include "hls/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <numbers>
#include <utility>

namespace hls {

namespace {

constexpr double pi = std::numbers::pi;

// Sample m rows away from i along the meridian through (i, j), with its
// angle measured on the unrolled great circle.
std::pair<double, double> meridian_sample(const GridFn2& u, int i, int j, int m)
{
    const Grid2& g = u.grid();
    const int nt = g.n_theta();
    const int opposite = (j + g.n_phi() / 2) % g.n_phi();
    const int row = i + m;
    if (row < 0) {
        const int mirrored = -row - 1;
        return {-g.theta(mirrored), u(mirrored, opposite)};
    }
    if (row >= nt) {
        const int mirrored = 2 * nt - 1 - row;
        return {2.0 * pi - g.theta(mirrored), u(mirrored, opposite)};
    }
    return {g.theta(row), u(row, j)};
}

// First and second derivative at x0 of the cubic through four samples.
std::pair<double, double> cubic_derivatives(const double* x, const double* y, double x0)
{
    double d1 = 0.0;
    double d2 = 0.0;
    for (int a = 0; a < 4; ++a) {
        double denom = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (b != a) {
                denom *= x[a] - x[b];
            }
        }
        // l_a(x) = prod_{b != a} (x - x_b) / denom, differentiated at x0.
        double first = 0.0;
        double second = 0.0;
        for (int b = 0; b < 4; ++b) {
            if (b == a) {
                continue;
            }
            double prod_b = 1.0;
            for (int c = 0; c < 4; ++c) {
                if (c != a && c != b) {
                    prod_b *= x0 - x[c];
                }
            }
            first += prod_b;
            for (int c = 0; c < 4; ++c) {
                if (c == a || c == b) {
                    continue;
                }
                double prod_bc = 1.0;
                for (int e = 0; e < 4; ++e) {
                    if (e != a && e != b && e != c) {
                        prod_bc *= x0 - x[e];
                    }
                }
                second += prod_bc;
            }
        }
        d1 += y[a] * first / denom;
        d2 += y[a] * second / denom;
    }
    return {d1, d2};
}

double phi_apply(const GridFn2& u, int i, int j, const std::vector<double>& stencil_row)
{
    const int np = u.grid().n_phi();
    double sum = 0.0;
    for (int k = 0; k < np; ++k) {
        sum += stencil_row[(j - k + np) % np] * u(i, k);
    }
    return sum;
}

} // namespace

std::shared_ptr<const Grid2> Grid2::create(int n_theta, int n_phi)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const Grid2>> cache;
    const std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n_theta, n_phi}];
    if (!slot) {
        slot = std::make_shared<const Grid2>(n_theta, n_phi);
    }
    return slot;
}

Grid2::Grid2(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi)
{
    if (n_theta < 2 || n_phi < 4 || n_phi % 2 != 0) {
        throw UsageError("Grid2: need n_theta >= 2 and even n_phi >= 4");
    }
    const QuadratureRule rule = gauss_gegenbauer_rule(2, n_theta);
    theta_.resize(n_theta);
    cos_theta_.resize(n_theta);
    sin_theta_.resize(n_theta);
    weights_.resize(n_theta);
    const double dphi = 2.0 * pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        // Increasing theta = decreasing cos(theta).
        const int k = n_theta - 1 - i;
        const double x = rule.nodes[k];
        cos_theta_[i] = x;
        sin_theta_[i] = std::sqrt((1.0 - x) * (1.0 + x));
        theta_[i] = std::atan2(sin_theta_[i], x);
        weights_[i] = rule.weights[k] * dphi;
    }

    const double h = dphi;
    dphi_.assign(n_phi, 0.0);
    dphi2_.assign(n_phi, 0.0);
    dphi2_[0] = -pi * pi / (3.0 * h * h) - 1.0 / 6.0;
    for (int m = 1; m < n_phi; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const double half_angle = 0.5 * m * h;
        dphi_[m] = 0.5 * sign / std::tan(half_angle);
        const double sh = std::sin(half_angle);
        dphi2_[m] = -0.5 * sign / (sh * sh);
    }
}

SpherePoint Grid2::point(int i, int j) const
{
    const double ph = phi(j);
    return SpherePoint::normalized({sin_theta_[i] * std::cos(ph), sin_theta_[i] * std::sin(ph), cos_theta_[i]});
}

GridFn2::GridFn2(std::shared_ptr<const Grid2> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (values_.size() != static_cast<std::size_t>(grid_->n_theta()) * grid_->n_phi()) {
        throw UsageError("GridFn2: sample count does not match the grid");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw IntegrationError("GridFn2: non-finite sample");
        }
    }
}

GridFn2 GridFn2::sample(std::shared_ptr<const Grid2> grid, const SphereFunction& f)
{
    std::vector<double> values(static_cast<std::size_t>(grid->n_theta()) * grid->n_phi());
    for (int i = 0; i < grid->n_theta(); ++i) {
        for (int j = 0; j < grid->n_phi(); ++j) {
            values[static_cast<std::size_t>(i) * grid->n_phi() + j] = f(grid->point(i, j));
        }
    }
    return GridFn2(std::move(grid), std::move(values));
}

GridFn2 GridFn2::times(const GridFn2& other) const
{
    if (grid_ != other.grid_) {
        throw UsageError("GridFn2::times: grids differ");
    }
    std::vector<double> out(values_.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = values_[k] * other.values_[k];
    }
    return GridFn2(grid_, std::move(out));
}

double grid_integral(const GridFn2& u)
{
    const Grid2& g = u.grid();
    double total = 0.0;
    for (int i = 0; i < g.n_theta(); ++i) {
        double row = 0.0;
        for (int j = 0; j < g.n_phi(); ++j) {
            row += u(i, j);
        }
        total += g.weight(i) * row;
    }
    return total;
}

double grid_dirichlet(const GridFn2& u)
{
    // theta part: two-point differences between adjacent rows, each weighted
    // by the exact area of its band; the pole caps pair a row with its mirror
    // across the pole. phi part: spectral, at the rows.
    const Grid2& g = u.grid();
    const int nt = g.n_theta();
    const int np = g.n_phi();
    const double dphi = 2.0 * pi / np;
    double meridional = 0.0;
    for (int j = 0; j < np; ++j) {
        const int opposite = (j + np / 2) % np;
        double column = 0.0;
        const double north = (u(0, j) - u(0, opposite)) / (2.0 * g.theta(0));
        column += north * north * (1.0 - g.cos_theta(0));
        for (int i = 0; i + 1 < nt; ++i) {
            const double d = (u(i + 1, j) - u(i, j)) / (g.theta(i + 1) - g.theta(i));
            column += d * d * (g.cos_theta(i) - g.cos_theta(i + 1));
        }
        const double south = (u(nt - 1, opposite) - u(nt - 1, j)) / (2.0 * (pi - g.theta(nt - 1)));
        column += south * south * (1.0 + g.cos_theta(nt - 1));
        meridional += dphi * column;
    }
    double zonal = 0.0;
    for (int i = 0; i < nt; ++i) {
        const double inv_sin = 1.0 / g.sin_theta(i);
        double row = 0.0;
        for (int j = 0; j < np; ++j) {
            const double up = phi_apply(u, i, j, g.phi_first()) * inv_sin;
            row += up * up;
        }
        zonal += g.weight(i) * row;
    }
    const double total = meridional + zonal;
    if (!std::isfinite(total)) {
        throw ResolutionError("grid_dirichlet: non-finite gradient near a pole");
    }
    return total;
}

GridFn2 grid_laplacian(const GridFn2& u)
{
    // Four-point stencils in theta: the cot(theta) u_theta term multiplies the
    // first-derivative error by ~1/h at the pole rows, so that derivative needs
    // one order more than the three-point rule gives.
    const Grid2& g = u.grid();
    std::vector<double> out(u.values().size());
    for (int i = 0; i < g.n_theta(); ++i) {
        const double cot = g.cos_theta(i) / g.sin_theta(i);
        const double inv_sin2 = 1.0 / (g.sin_theta(i) * g.sin_theta(i));
        const int first = i < g.n_theta() / 2 ? -1 : -2;
        for (int j = 0; j < g.n_phi(); ++j) {
            double x[4];
            double y[4];
            for (int m = 0; m < 4; ++m) {
                std::tie(x[m], y[m]) = meridian_sample(u, i, j, first + m);
            }
            const auto [d1, d2] = cubic_derivatives(x, y, g.theta(i));
            out[static_cast<std::size_t>(i) * g.n_phi() + j] = d2 + cot * d1 + inv_sin2 * phi_apply(u, i, j, g.phi_second());
        }
    }
    return GridFn2(u.grid_ptr(), std::move(out));
}

GridFn2 coordinate_function(std::shared_ptr<const Grid2> grid, int j)
{
    if (j < 1 || j > 3) {
        throw UsageError("coordinate_function: j must be 1, 2 or 3");
    }
    return GridFn2::sample(std::move(grid), [j](const SpherePoint& w) { return w[j - 1]; });
}

double coordinate_laplacian_check(int j, int n_theta, int n_phi)
{
    const auto grid = Grid2::create(n_theta, n_phi);
    const GridFn2 w = coordinate_function(grid, j);
    const GridFn2 lap = grid_laplacian(w);
    double worst = 0.0;
    for (std::size_t k = 0; k < w.values().size(); ++k) {
        worst = std::max(worst, std::abs(lap.values()[k] + 2.0 * w.values()[k]));
    }
    return worst;
}

GsrSides gsr_full_check(const GridFn2& u)
{
    double lhs = 0.0;
    for (int j = 1; j <= 3; ++j) {
        lhs += grid_dirichlet(coordinate_function(u.grid_ptr(), j).times(u));
    }
    const double rhs = grid_dirichlet(u) + 2.0 * grid_integral(u.times(u));
    return {lhs, rhs};
}

ConvergenceStudy gsr_convergence(const SphereFunction& u, const std::vector<int>& sizes)
{
    ConvergenceStudy study;
    for (int n : sizes) {
        const GridFn2 sampled = GridFn2::sample(Grid2::create(n, 2 * n), u);
        const GsrSides sides = gsr_full_check(sampled);
        study.n_theta.push_back(n);
        study.errors.push_back(std::abs(sides.lhs - sides.rhs) / std::abs(sides.rhs));
    }
    for (std::size_t k = 1; k < study.errors.size(); ++k) {
        study.orders.push_back(std::log2(study.errors[k - 1] / study.errors[k]));
    }
    return study;
}

} // namespace hls
