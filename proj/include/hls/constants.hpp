#pragma once

// Sharp constants and Funk-Hecke eigenvalues for the Riesz kernels on S^N.

#include <functional>
#include <vector>

namespace hls {

/// Problem configuration: dimension N and Riesz exponent lambda in (0, N).
class Params {
public:
    Params(int n, double lambda);

    /// Configuration through the Sobolev order s, lambda = N - 2s.
    static Params from_sobolev_order(int n, double s);

    int n() const { return n_; }
    double lambda() const { return lambda_; }
    double p() const { return 2.0 * n_ / (2.0 * n_ - lambda_); }
    double alpha() const { return 0.5 * lambda_; }
    double s() const { return 0.5 * (n_ - lambda_); }
    double q() const { return 2.0 * n_ / (n_ - 2.0 * s()); }

private:
    int n_;
    double lambda_;
};

double hls_sharp_constant(int n, double lambda);

/// Sharp constant of the fractional Sobolev inequality, order s in (0, n/2).
double sobolev_sharp_constant(int n, double s);

/// The s = 1 constant in the form N(N-2)/4 |S^N|^{2/N}; requires n >= 3.
double sobolev_sphere_constant(int n);

/// Coefficient of |x|^{-(N-2s)} in the Green's function of (-Delta)^s.
double green_coeff(int n, double s);

/// Funk-Hecke normalization kappa_{N,l}.
double funk_hecke_kappa(int n, int l);

/// The factor kappa_N of the closed-form eigenvalues.
double eigenvalue_kappa(int n);

/// Eigenvalue on H_l of the operator with kernel (1 - omega.eta)^{-alpha},
/// alpha in (-1, n/2). Pole-free: E_0 times the product of the ratios
/// (k + alpha)/(k + n - alpha), k < l.
double eigenvalue_E(int n, double alpha, int l);

/// The same eigenvalue assembled literally from Gamma functions,
/// kappa_N 2^{-alpha} (-1)^l Gamma(1-alpha) Gamma(n/2-alpha) /
/// (Gamma(1-l-alpha) Gamma(l+n-alpha)). Requires alpha not a non-negative
/// integer.
double eigenvalue_E_gamma_form(int n, double alpha, int l);

/// E_0..E_lmax of one kernel.
struct SpectralKernel {
    int n = 0;
    double alpha = 0.0;
    std::vector<double> eigenvalues;
};

SpectralKernel spectral_kernel(int n, double alpha, int lmax);

/// Kernel K(t) of a rotation-invariant operator. The callable receives t and
/// 1 - t separately so that endpoint-singular kernels can be evaluated
/// without cancellation. A kernel behaving like (1 - t)^{-endpoint_exponent}
/// near t = 1 declares that exponent; the quadrature absorbs it into the
/// Gauss-Jacobi weight.
struct ZonalKernel {
    std::function<double(double t, double one_minus_t)> value;
    double endpoint_exponent = 0.0;
};

/// The kernel (1 - t)^{-alpha} with its endpoint exponent declared.
ZonalKernel power_kernel(double alpha);

/// kappa_{N,l} int K(t) Z_l(t) (1-t^2)^{(N-2)/2} dt by Gauss-Jacobi quadrature.
double funk_hecke_quadrature(int n, const ZonalKernel& kernel, int l, int nodes = 200);

/// Closed form of int (1+t)^{(N-2)/2} (1-t)^beta Z_l(t) dt, beta > -1.
double gegenbauer_integral(int n, double beta, int l);

} // namespace hls
