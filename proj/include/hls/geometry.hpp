#pragma once

// Stereographic projection R^N <-> S^N, the conformal dilations
// gamma_{delta,xi} of the sphere, and the function correspondences they
// induce.

#include "hls/zonal.hpp"

#include <functional>
#include <span>
#include <vector>

namespace hls {

/// Point of S^N in R^{N+1}.
class SpherePoint {
public:
    /// Validates |omega| = 1 to 1e-14 (relative to the coordinate scale).
    explicit SpherePoint(std::vector<double> coords);

    /// Normalizes an arbitrary nonzero vector onto the sphere.
    static SpherePoint normalized(std::vector<double> v);
    /// e_{N+1} scaled by sign (+1 north pole, -1 south pole).
    static SpherePoint pole(int n, int sign = 1);

    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<double>& coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }
    double axis() const { return coords_.back(); }

private:
    std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);

SpherePoint stereo(std::span<const double> x);
/// Throws PoleError at (0, ..., 0, -1).
std::vector<double> stereo_inv(const SpherePoint& omega);
/// (2/(1+|x|^2))^N.
double stereo_jacobian(std::span<const double> x);

struct ChordalSides {
    double lhs = 0.0; // |S(x) - S(y)|^2
    double rhs = 0.0; // (2/(1+|x|^2)) |x-y|^2 (2/(1+|y|^2))
};

ChordalSides chordal_factorization(std::span<const double> x, std::span<const double> y);

/// gamma_{delta,xi} = O^T S D_delta S^{-1} O with O xi = e_{N+1}.
class ConformalMap {
public:
    ConformalMap(double delta, SpherePoint xi);

    double delta() const { return delta_; }
    const SpherePoint& xi() const { return xi_; }
    ConformalMap inverse() const { return ConformalMap(1.0 / delta_, xi_); }

private:
    double delta_;
    SpherePoint xi_;
};

SpherePoint conformal_map_apply(const ConformalMap& m, const SpherePoint& omega);

/// Surface Jacobian of gamma_{delta,xi} at omega,
/// (2 delta / ((1 + s) + delta^2 (1 - s)))^N with s = omega.xi.
double conformal_jacobian(const ConformalMap& m, const SpherePoint& omega);

/// gamma(omega).xi as a function of s = omega.xi alone.
double conformal_axis_image(double delta, double s);
/// Jacobian as a function of s = omega.xi.
double conformal_jacobian_axial(int n, double delta, double s);

/// f~(omega) = J_{gamma^{-1}}(omega)^{1/r} f(gamma^{-1}(omega)) for a zonal f
/// and xi = xi_sign * e; the result is zonal on the same basis.
ZonalFn transport(const ZonalFn& f, double delta, int xi_sign, double r);

using SphereFunction = std::function<double(const SpherePoint&)>;

/// The same transport for a general function on S^N.
SphereFunction transport(SphereFunction f, const ConformalMap& m, double r);

/// Radial function on R^N sampled on a geometric grid.
struct RadialFn {
    int dim = 0;
    std::vector<double> radii;  // strictly increasing, positive
    std::vector<double> values; // F(r_k), finite
    /// F(r) ~ C r^{-decay} beyond the grid.
    double decay = 0.0;
    /// Exact evaluator when the function is known in closed form; used for
    /// off-grid evaluation instead of interpolation.
    std::function<double(double)> exact;

    double operator()(double r) const;
};

struct RadialGrid {
    double r_min = 1e-4;
    double r_max = 1e4;
    int points = 4096;
};

std::vector<double> geometric_grid(const RadialGrid& grid);

RadialFn make_radial(int dim, std::function<double(double)> f, double decay, const RadialGrid& grid = {});

/// F(x) = J_S(x)^{1/p} f(S(x)) for a zonal f about e_{N+1}.
RadialFn push_to_plane(const ZonalFn& f, double p, const RadialGrid& grid = {});

/// Inverse of push_to_plane, sampled on the given basis.
ZonalFn lift_to_sphere(const RadialFn& F, double p, std::shared_ptr<const ZonalBasis> basis);

/// (int |F|^p dx)^{1/p} by the trapezoid rule in log r with analytic tails.
double radial_lp_norm(const RadialFn& F, double p);

/// int |grad F|^2 dx, fourth-order differences in log r; N >= 3.
double radial_dirichlet_energy(const RadialFn& F);

} // namespace hls

namespace hls {

/// Volume distortion of `map` at omega from central differences along an
/// orthonormal tangent frame: sqrt(det G), G the Gram matrix of the image
/// difference quotients.
double finite_difference_jacobian(const std::function<SpherePoint(const SpherePoint&)>& map, const SpherePoint& omega,
                                  double step = 1e-5);

/// Random point, uniform on S^n.
SpherePoint random_sphere_point(int n, Rng& rng);

} // namespace hls
