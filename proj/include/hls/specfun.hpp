#pragma once

// Special functions and Gauss quadrature on [-1, 1].

#include <vector>

namespace hls {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Rising factorial a (a+1) ... (a+n-1), evaluated as a finite product.
double pochhammer(double a, int n);

/// Gegenbauer polynomial C_l^{(lam)}(t) by the three-term recurrence.
/// Requires lam > -1/2.
double gegenbauer(int l, double lam, double t);

/// Chebyshev polynomial of the first kind.
double chebyshev_t(int l, double t);

/// Zonal harmonic profile of degree l on S^n, i.e. C_l^{((n-1)/2)}(t).
///
/// For n = 1 the Gegenbauer family degenerates; there we use the limit
/// lim_{lam -> 0} C_l^{(lam)}/lam = (2/l) T_l(t) for l >= 1 and 1 for l = 0,
/// which is the normalization that pairs with the Funk-Hecke factor
/// kappa_{1,l} = l.
double zonal_polynomial(int n, int l, double t);

/// d/dt of zonal_polynomial(n, l, t).
double zonal_polynomial_derivative(int n, int l, double t);

/// Weighted norm h_l = int_{-1}^{1} Z_l(t)^2 (1-t^2)^{(n-2)/2} dt of the
/// profile returned by zonal_polynomial.
double zonal_polynomial_norm(int n, int l);

/// Surface measure of the unit n-sphere in R^{n+1}; sphere_area(0) = 2.
double sphere_area(int n);

/// Gauss rule for the weight (1-t)^a (1+t)^b on (-1, 1).
struct JacobiRule {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> weights; // positive
};

/// Newton iteration on the Jacobi recurrence from asymptotic initial
/// guesses; a, b > -1, k >= 1.
JacobiRule gauss_jacobi_rule(double a, double b, int k);

/// Gauss rule for the zonal weight (1-t^2)^{(n-2)/2} of S^n.
struct QuadratureRule {
    int dim = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double weight_sum() const;
};

inline constexpr int kDefaultNodes = 64;

QuadratureRule gauss_gegenbauer_rule(int n, int k = kDefaultNodes);

/// Exact value of int_{-1}^{1} (1-t^2)^{(n-2)/2} dt.
double zonal_weight_total(int n);

} // namespace hls
