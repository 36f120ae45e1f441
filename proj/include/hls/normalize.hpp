#pragma once

// Center-of-mass normalization by conformal dilations of the sphere.

#include "hls/geometry.hpp"
#include "hls/zonal.hpp"

#include <optional>
#include <vector>

namespace hls {

/// int omega f(omega) d omega as an (N+1)-vector; for a zonal f about
/// e_{N+1} only the last component can be nonzero.
std::vector<double> com_vector(const ZonalFn& f);

/// F(r xi) = int gamma_{1-r,xi}(omega) f(omega) d omega for r in (0, 1) and
/// any xi in S^N. Requires int f = 1. Off-axis xi is handled by an inner
/// Gauss rule over the angle between omega and xi within the slice t = const.
std::vector<double> F_map(double r, const SpherePoint& xi, const ZonalFn& f, int inner_nodes = 64);

/// Axis component of int gamma_{delta, e}(omega) |f|^p d omega.
double mass_com_residual(const ZonalFn& f, double p, double delta);

struct BracketProbe {
    double log_delta = 0.0;
    double residual = 0.0;
};

struct ComResult {
    double delta = 1.0; // canonical: delta <= 1 with the chosen xi_sign
    int xi_sign = 1;
    std::vector<double> residual; // int omega |f~|^p over the transported function
    int iterations = 0;
    std::vector<BracketProbe> probes;
    std::optional<ZonalFn> transported;

    ConformalMap map(int n) const { return ConformalMap(delta, SpherePoint::pole(n, xi_sign)); }
};

struct ComOptions {
    double log_delta_min = -18.420680743952367; // ln 1e-8
    double log_delta_max = 18.420680743952367;  // ln 1e8
    int max_iterations = 80;
    /// Relative COM (over total mass) accepted as already centered.
    double centered_tolerance = 1e-15;
};

/// Finds delta with int omega |f~|^p = 0 for f~ = transport(f, gamma_{delta,e}, p)
/// by bisection in ln delta. Throws NoRootError if the residual does not
/// change sign over the bracket.
ComResult com_normalize(const ZonalFn& f, double p, const ComOptions& options = {});

} // namespace hls
