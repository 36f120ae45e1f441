#pragma once

// Non-zonal calculus on S^2 over a latitude-longitude grid: Gauss-Legendre
// in cos(theta), uniform in phi. Derivatives are spectral in phi. In theta
// the Dirichlet form uses differences between adjacent rows over exact band
// areas and the Laplacian uses four-point local polynomials, with ghost rows
// across the poles; both converge at second order in the theta spacing.

#include "hls/geometry.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace hls {

class Grid2 {
public:
    static std::shared_ptr<const Grid2> create(int n_theta, int n_phi);

    Grid2(int n_theta, int n_phi);

    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    double theta(int i) const { return theta_[i]; }
    double cos_theta(int i) const { return cos_theta_[i]; }
    double sin_theta(int i) const { return sin_theta_[i]; }
    double phi(int j) const { return 2.0 * 3.14159265358979323846 * j / n_phi_; }
    /// Quadrature weight of cell (i, j).
    double weight(int i) const { return weights_[i]; }
    /// Point (sin th cos ph, sin th sin ph, cos th).
    SpherePoint point(int i, int j) const;

    /// Periodic spectral differentiation stencils, indexed by (j - k) mod n_phi.
    const std::vector<double>& phi_first() const { return dphi_; }
    const std::vector<double>& phi_second() const { return dphi2_; }

private:
    int n_theta_;
    int n_phi_;
    std::vector<double> theta_;
    std::vector<double> cos_theta_;
    std::vector<double> sin_theta_;
    std::vector<double> weights_;
    std::vector<double> dphi_;
    std::vector<double> dphi2_;
};

class GridFn2 {
public:
    GridFn2(std::shared_ptr<const Grid2> grid, std::vector<double> values);

    static GridFn2 sample(std::shared_ptr<const Grid2> grid, const SphereFunction& f);

    const Grid2& grid() const { return *grid_; }
    const std::shared_ptr<const Grid2>& grid_ptr() const { return grid_; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_->n_phi() + j]; }
    const std::vector<double>& values() const { return values_; }

    GridFn2 times(const GridFn2& other) const;

private:
    std::shared_ptr<const Grid2> grid_;
    std::vector<double> values_;
};

double grid_integral(const GridFn2& u);

/// int |grad u|^2 = int (u_theta^2 + u_phi^2 / sin^2 theta).
double grid_dirichlet(const GridFn2& u);

/// Discrete Laplace-Beltrami operator at every grid point.
GridFn2 grid_laplacian(const GridFn2& u);

/// max |Delta omega_j + 2 omega_j| over the grid, j in {1, 2, 3}.
double coordinate_laplacian_check(int j, int n_theta, int n_phi);

/// The sampled coordinate function omega_j.
GridFn2 coordinate_function(std::shared_ptr<const Grid2> grid, int j);

struct GsrSides {
    double lhs = 0.0; // sum_j E[omega_j u]
    double rhs = 0.0; // E[u] + 2 int u^2
};

GsrSides gsr_full_check(const GridFn2& u);

struct ConvergenceStudy {
    std::vector<int> n_theta;
    std::vector<double> errors; // |lhs - rhs| / |rhs|
    std::vector<double> orders; // log2(errors[k-1] / errors[k])
};

/// gsr_full_check on grids n x 2n for each n in `sizes`.
ConvergenceStudy gsr_convergence(const SphereFunction& u, const std::vector<int>& sizes);

} // namespace hls
