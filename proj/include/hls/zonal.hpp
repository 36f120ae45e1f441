#pragma once

// Zonal functions on S^N: functions of t = omega.e for a fixed axis e,
// sampled at Gauss-Gegenbauer nodes and expanded in the zonal harmonic
// profiles Z_l = C_l^{((N-1)/2)}.

#include "hls/random.hpp"
#include "hls/specfun.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace hls {

inline constexpr int kZonalNodes = 256;

/// Tail criterion for spectral sums: the last two weighted components must
/// stay below this fraction of the largest one.
inline constexpr double kSpectralTailTolerance = 1e-12;

/// Nodes, weights and sampled harmonic profiles for one (N, K) pair.
/// Instances are immutable and shared through get().
class ZonalBasis {
public:
    static std::shared_ptr<const ZonalBasis> get(int dim, int nodes = kZonalNodes);

    ZonalBasis(int dim, int nodes);

    int dim() const { return rule_.dim; }
    int size() const { return static_cast<int>(rule_.size()); }
    /// Degree cutoff L = K/2.
    int degree() const { return degree_; }
    const QuadratureRule& rule() const { return rule_; }
    /// |S^{N-1}|, the factor turning the 1D rule into a surface integral.
    double shell_area() const { return shell_area_; }

    double profile(int l, int k) const { return profile_[static_cast<std::size_t>(l) * size() + k]; }
    double profile_derivative(int l, int k) const
    {
        return derivative_[static_cast<std::size_t>(l) * size() + k];
    }
    double norm(int l) const { return norms_[l]; }

private:
    QuadratureRule rule_;
    int degree_;
    double shell_area_;
    std::vector<double> profile_;
    std::vector<double> derivative_;
    std::vector<double> norms_;
};

class ZonalFn {
public:
    /// Values at the basis nodes; rejects non-finite samples.
    ZonalFn(std::shared_ptr<const ZonalBasis> basis, std::vector<double> values);

    static ZonalFn sample(std::shared_ptr<const ZonalBasis> basis, const std::function<double(double)>& f);
    static ZonalFn sample(int dim, const std::function<double(double)>& f, int nodes = kZonalNodes);
    static ZonalFn from_coefficients(std::shared_ptr<const ZonalBasis> basis, const std::vector<double>& coeffs);

    int dim() const { return basis_->dim(); }
    int size() const { return basis_->size(); }
    const std::shared_ptr<const ZonalBasis>& basis() const { return basis_; }
    const std::vector<double>& nodes() const { return basis_->rule().nodes; }
    const std::vector<double>& values() const { return values_; }
    /// a_0..a_L with L = basis()->degree().
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Spectral interpolant at an arbitrary t in [-1, 1].
    double operator()(double t) const;

    /// u'(t_k) by differentiating the expansion.
    std::vector<double> derivative_values() const;

    /// Pointwise g(t_k, f(t_k)).
    ZonalFn map(const std::function<double(double t, double value)>& g) const;
    ZonalFn scaled(double c) const;

    /// Pointwise product with another function on the same basis.
    ZonalFn times(const ZonalFn& other) const;
    ZonalFn plus(const ZonalFn& other) const;

private:
    std::shared_ptr<const ZonalBasis> basis_;
    std::vector<double> values_;
    std::vector<double> coeffs_;
};

struct Expansion {
    std::vector<double> coeffs;
    double tail_ratio = 0.0; // largest of the last two |a_l| sqrt(h_l) over the peak
    bool resolved = true;
};

/// a_l = <f, Z_l>_w / h_l for l <= L; L < node count.
Expansion gegenbauer_coeffs(const ZonalFn& f, int max_degree);

struct HarmonicComponent {
    int degree = 0;
    double coefficient = 0.0;
    double norm_sq = 0.0; // |S^{N-1}| a_l^2 h_l
};

std::vector<HarmonicComponent> harmonic_components(const ZonalFn& f);

double zonal_integral(const ZonalFn& f);
double zonal_lp_norm(const ZonalFn& f, double p);
/// int |f|^p d omega with sub-1e-300 magnitudes flushed to zero.
double zonal_power_integral(const ZonalFn& f, double p);

/// Bilinear form of the kernel (1 - omega.eta)^{-alpha}, alpha in (-1, N/2).
double kernel_bilinear(const ZonalFn& f, const ZonalFn& g, double alpha);

/// Bilinear form of the kernel |omega - eta|^{-lambda}, lambda in (0, N).
double hls_bilinear(const ZonalFn& f, const ZonalFn& g, double lambda);

/// hls_bilinear(f, f) / ||f||_p^2 with p = 2N/(2N - lambda).
double hls_quotient(const ZonalFn& f, double lambda);

/// Nodal values of int |omega - eta|^{-lambda} f(eta) d eta.
ZonalFn apply_riesz(const ZonalFn& f, double lambda);

/// int |grad u|^2 d omega.
double dirichlet_integral(const ZonalFn& u);

/// E[u] = int |grad u|^2 + N(N-2)/4 |u|^2.
double conformal_energy(const ZonalFn& u);

/// E[u] / ||u||_q^2, q = 2N/(N-2); N >= 3.
double sobolev_quotient(const ZonalFn& u);

struct IdentitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// int |grad(t u)|^2 against int t^2 (|grad u|^2 + N u^2).
IdentitySides gsr_zonal_check(const ZonalFn& u);

/// c (1 - r t)^{-(2N - lambda)/2}: the HLS optimizer with xi = r e.
ZonalFn hls_optimizer(int n, double lambda, double r, int nodes = kZonalNodes);

/// (1 - r t)^{-(N - 2)/2}: the Sobolev optimizer with xi = r e.
ZonalFn sobolev_optimizer(int n, double r, int nodes = kZonalNodes);

/// One member of the seeded corpus of nonnegative test functions. The kind
/// cycles with `index`:
///   0: q(t)^2 + eps, q a degree-4 polynomial with N(0,1) monomial
///      coefficients, eps ~ U(0.01, 1);
///   1: w1 (1 - r1 s1 t)^{-b} + w2 (1 - r2 s2 t)^{-b}, w ~ U(0.1, 1),
///      r ~ U(0, 0.8), s = +-1, b ~ U(0.5, 3);
///   2: exp(sum_{j<=3} c_j t^j), c_j ~ N(0, 1/4).
ZonalFn random_nonnegative_zonal(int dim, Rng& rng, int index, int nodes = kZonalNodes);

/// Random polynomial sum_{j<=degree} c_j t^j with N(0,1) coefficients.
ZonalFn random_polynomial_zonal(int dim, Rng& rng, int degree, int nodes = kZonalNodes);

} // namespace hls
