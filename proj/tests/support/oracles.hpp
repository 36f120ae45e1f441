#pragma once

// Slow reference computations that avoid the spectral machinery.

#include "hls/geometry.hpp"
#include "hls/normalize.hpp"
#include "hls/specfun.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using PointFn = std::function<double(const hls::SpherePoint&)>;

// iint f(w) g(e) |w - e|^{-lambda} dw de on S^2, with polar coordinates about
// each outer point: s = w.e by Gauss-Jacobi (weight (1-s)^{-lambda/2}), the
// azimuth by the trapezoid rule. Outer grid: Gauss-Legendre in cos(theta)
// times uniform phi.
inline double hls_double_integral_s2(const PointFn& f, const PointFn& g, double lambda, int outer = 48,
                                     int inner = 48)
{
    constexpr double pi = std::numbers::pi;
    const hls::JacobiRule cosines = hls::gauss_jacobi_rule(0.0, 0.0, outer);
    const hls::JacobiRule radial = hls::gauss_jacobi_rule(-0.5 * lambda, 0.0, inner);
    const int n_phi = 2 * outer;
    const int n_psi = 2 * inner;
    const double scale = std::pow(2.0, -0.5 * lambda);
    double total = 0.0;
    for (std::size_t a = 0; a < cosines.nodes.size(); ++a) {
        const double ct = cosines.nodes[a];
        const double st = std::sqrt(1.0 - ct * ct);
        for (int b = 0; b < n_phi; ++b) {
            const double phi = 2.0 * pi * b / n_phi;
            const double w[3] = {st * std::cos(phi), st * std::sin(phi), ct};
            // Orthonormal frame u1, u2 perpendicular to w.
            const double u1[3] = {ct * std::cos(phi), ct * std::sin(phi), -st};
            const double u2[3] = {-std::sin(phi), std::cos(phi), 0.0};
            double inner_sum = 0.0;
            for (std::size_t c = 0; c < radial.nodes.size(); ++c) {
                const double s = radial.nodes[c];
                const double rs = std::sqrt(1.0 - s * s);
                double ring = 0.0;
                for (int d = 0; d < n_psi; ++d) {
                    const double psi = 2.0 * pi * d / n_psi;
                    std::vector<double> e(3);
                    for (int k = 0; k < 3; ++k) {
                        e[k] = s * w[k] + rs * (std::cos(psi) * u1[k] + std::sin(psi) * u2[k]);
                    }
                    ring += g(hls::SpherePoint::normalized(std::move(e)));
                }
                inner_sum += radial.weights[c] * ring * (2.0 * pi / n_psi);
            }
            total += cosines.weights[a] * (2.0 * pi / n_phi) * f(hls::SpherePoint({w[0], w[1], w[2]})) * inner_sum;
        }
    }
    return scale * total;
}

// Root of the center-of-mass residual by a coarse scan in ln(delta) followed by
// secant refinement; independent of the bisection in com_normalize.
inline double com_root_scan(const hls::ZonalFn& f, double p)
{
    double prev_x = -18.0;
    double prev_r = hls::mass_com_residual(f, p, std::exp(prev_x));
    for (double x = -18.0 + 0.25; x <= 18.0; x += 0.25) {
        const double r = hls::mass_com_residual(f, p, std::exp(x));
        if ((r > 0.0) != (prev_r > 0.0)) {
            double a = prev_x;
            double b = x;
            double ra = prev_r;
            double rb = r;
            for (int it = 0; it < 100 && std::abs(b - a) > 1e-15; ++it) {
                const double m = b - rb * (b - a) / (rb - ra);
                const double rm = hls::mass_com_residual(f, p, std::exp(m));
                a = b;
                ra = rb;
                b = m;
                rb = rm;
                if (rm == 0.0) {
                    break;
                }
            }
            return std::exp(b);
        }
        prev_x = x;
        prev_r = r;
    }
    return std::nan("");
}

} // namespace oracle
