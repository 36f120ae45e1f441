#pragma once

// Euler-Lagrange fixed-point search, second variations and the spectral
// margin behind the sharp HLS inequality on S^N.

#include "hls/zonal.hpp"

#include <ostream>
#include <vector>

namespace hls {

struct IterationOptions {
    int max_iters = 500;
    double relax = 1.0; // h <- (1 - relax) h + relax * T(h), renormalized
    double tol = 1e-8;  // on the fixed-point residual
};

struct IterationStep {
    int iter = 0;
    double quotient = 0.0;
    double sup_change = 0.0; // sup |h_k - h_{k-1}| of L^p-normalized iterates
    double residual = 0.0;
};

using IterationTrace = std::vector<IterationStep>;

struct IterationResult {
    ZonalFn h;
    IterationTrace trace;
    bool converged = false;
    double el_constant = 0.0;
};

/// sup |K h - c h^{p-1}| / sup |K h| with c = B(h, h) / int h^p, K the Riesz
/// operator |omega - eta|^{-lambda}.
double el_residual(const ZonalFn& h, double lambda);

/// Iterates h <- normalize_p((K h)^{1/(p-1)}) from h0 > 0. Non-convergence within
/// max_iters is reported through converged = false; the trace is kept either way.
IterationResult euler_lagrange_iterate(double lambda, const ZonalFn& h0, const IterationOptions& options = {});

struct SecondVariation {
    double value = 0.0;
    double first = 0.0;  // B(f, f) int h^p
    double second = 0.0; // (p - 1) B(h, h) int h^{p-2} f^2
    double scale() const;
};

/// B(f, f) int h^p - (p-1) B(h, h) int h^{p-2} f^2 after removing from f its
/// component along h (the direction conjugate to int h^{p-1} f = 0).
SecondVariation second_variation_hls_terms(const ZonalFn& h, const ZonalFn& f, double lambda);
double second_variation_hls(const ZonalFn& h, const ZonalFn& f, double lambda);

/// Same combination for f = omega_j h with j <= N (orthogonal to the axis); the
/// direction is not zonal but reduces to one-dimensional sums. The constraint
/// holds by symmetry.
SecondVariation second_variation_hls_transverse(const ZonalFn& h, double lambda);

/// Sum over j = 1..N+1 of the combinations for f = omega_j h.
SecondVariation second_variation_hls_coordinates(const ZonalFn& h, double lambda);

/// E[v] int U^q - (q-1) E[U] int U^{q-2} v^2 with v projected as above.
SecondVariation second_variation_sobolev_terms(const ZonalFn& u, const ZonalFn& v);
double second_variation_sobolev(const ZonalFn& u, const ZonalFn& v);

/// (N - 2 alpha)/(N - alpha) E_l(alpha) - E_l(alpha - 1), evaluated in the
/// factored form E_l (N-2a) l (l+N-1) / ((N-a)(l-1+a)(l+N-a)); regular at alpha = 1.
double key_margin(int n, double alpha, int l);

/// The same margin as a plain difference of the two eigenvalues.
double key_margin_difference(int n, double alpha, int l);

/// Scalar form (alpha - 1)/((l-1+alpha)(l+N-alpha)) against 1/(N-alpha): returns rhs - lhs.
double key_scalar_gap(int n, double alpha, int l);

struct KeySides {
    double lhs = 0.0; // iint f(w) (w.e) f(e) |w - e|^{-2 alpha}
    double rhs = 0.0; // alpha/(N-alpha) iint f f |w - e|^{-2 alpha}
};

/// lhs from the kernel identity w.e |w-e|^{-2a} = 2^{-a}[(1-w.e)^{-a} - (1-w.e)^{1-a}].
KeySides key_inequality_bilinear_check(const ZonalFn& f, double alpha);

/// lhs with eigenvalues of t (2(1-t))^{-alpha} taken from Funk-Hecke quadrature.
double key_lhs_quadrature(const ZonalFn& f, double alpha);

/// lhs as hls_bilinear at 2 alpha minus 2^{-alpha} times the (alpha-1) form.
double key_lhs_two_forms(const ZonalFn& f, double alpha);

void write_trace_csv(std::ostream& out, const IterationTrace& trace);

} // namespace hls
