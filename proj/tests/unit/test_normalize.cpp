#include "hls/constants.hpp"
#include "hls/errors.hpp"
#include "hls/normalize.hpp"
#include "hls/random.hpp"
#include "hls/sphere2.hpp"
#include "hls/zonal.hpp"

#include "../support/oracles.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hls;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ZonalFn unit_mass(const ZonalFn& f) { return f.scaled(1.0 / zonal_integral(f)); }

double sup_relative_spread(const ZonalFn& f)
{
    const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
    return (*hi - *lo) / std::abs(*hi);
}

struct Config {
    int n;
    double lambda;
};

constexpr Config kConfigs[] = {{1, 0.5}, {2, 1.0}, {3, 1.0}, {3, 2.0}};

} // namespace

TEST_CASE("center of mass vector")
{
    const ZonalFn one = ZonalFn::sample(2, [](double) { return 1.0; });
    for (double c : com_vector(one)) {
        CHECK(std::abs(c) < 1e-15);
    }
    const auto t = com_vector(ZonalFn::sample(2, [](double x) { return x; }));
    REQUIRE(t.size() == 3);
    CHECK(t[0] == 0.0);
    CHECK(t[1] == 0.0);
    CHECK(t[2] == Approx(4.0 * pi / 3.0).epsilon(1e-14));
    const auto even = com_vector(ZonalFn::sample(3, [](double x) { return std::cosh(2.0 * x); }));
    CHECK(std::abs(even.back()) < 1e-14);
}

TEST_CASE("F map limits and symmetry")
{
    const ZonalFn f = unit_mass(ZonalFn::sample(2, [](double t) { return 1.0 + 0.5 * t + t * t; }));
    CHECK_THROWS_AS(F_map(0.0, SpherePoint::pole(2), f), DomainError);
    CHECK_THROWS_AS(F_map(1.0, SpherePoint::pole(2), f), DomainError);
    CHECK_THROWS_AS(F_map(0.5, SpherePoint::pole(2), f.scaled(2.0)), UsageError);

    // r -> 0 gives the plain center of mass
    const auto small = F_map(1e-9, SpherePoint::normalized({0.3, -0.2, 0.9}), f);
    const auto com = com_vector(f);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(small[i] - com[i]) < 1e-7);
    }
    const ZonalFn centered = unit_mass(ZonalFn::sample(2, [](double t) { return 2.0 + t * t; }));
    for (double c : F_map(1e-9, SpherePoint::normalized({1.0, 1.0, 0.0}), centered)) {
        CHECK(std::abs(c) < 1e-8);
    }

    Rng rng(13);
    for (int n : {1, 2, 3}) {
        const ZonalFn g = unit_mass(random_nonnegative_zonal(n, rng, n));
        for (int k = 0; k < 5; ++k) {
            const SpherePoint xi = random_sphere_point(n, rng);
            const auto near = F_map(0.999, xi, g);
            double d = 0.0;
            for (int i = 0; i <= n; ++i) {
                d += (near[i] - xi[i]) * (near[i] - xi[i]);
            }
            CHECK(std::sqrt(d) < 2e-2);
        }
        const auto axial = F_map(0.4, SpherePoint::pole(n, -1), g);
        for (int i = 0; i < n; ++i) {
            CHECK(axial[i] == 0.0);
        }
    }
}

TEST_CASE("F map against brute force on the S^2 grid")
{
    auto profile = [](double t) { return std::exp(t) + 0.2; };
    const ZonalFn f = unit_mass(ZonalFn::sample(2, profile));
    const double scale = 1.0 / zonal_integral(ZonalFn::sample(2, profile));
    const SpherePoint xi = SpherePoint::normalized({0.4, -0.7, 0.3});
    const double r = 0.35;
    const auto fast = F_map(r, xi, f);
    const auto grid = Grid2::create(128, 256);
    const ConformalMap g(1.0 - r, xi);
    for (int i = 0; i < 3; ++i) {
        const GridFn2 integrand = GridFn2::sample(grid, [&](const SpherePoint& w) {
            return conformal_map_apply(g, w)[i] * scale * profile(w.axis());
        });
        CHECK(std::abs(grid_integral(integrand) - fast[i]) < 1e-10);
    }
}

TEST_CASE("mass residual is decreasing in delta")
{
    const ZonalFn f = ZonalFn::sample(3, [](double t) { return std::exp(1.5 * t); });
    double previous = mass_com_residual(f, 1.5, 1e-3);
    for (double x = -6.0; x <= 6.0; x += 0.5) {
        const double r = mass_com_residual(f, 1.5, std::exp(x));
        CHECK(r < previous);
        previous = r;
    }
}

TEST_CASE("normalization zeroes the center of mass on the corpus")
{
    Rng rng(2024);
    for (const Config& c : kConfigs) {
        const double p = Params(c.n, c.lambda).p();
        for (int k = 0; k < 9; ++k) {
            const ZonalFn f = random_nonnegative_zonal(c.n, rng, k);
            const ComResult res = com_normalize(f, p);
            REQUIRE(res.transported.has_value());
            const double mass = zonal_power_integral(f, p);
            INFO("n=" << c.n << " k=" << k << " delta=" << res.delta);
            CHECK(std::abs(res.residual.back()) <= 1e-10 * mass);
            CHECK(res.delta <= 1.0);
            CHECK(std::abs(res.xi_sign) == 1);
            CHECK(rel(zonal_power_integral(*res.transported, p), mass) < 1e-8);
            CHECK(rel(hls_quotient(*res.transported, c.lambda), hls_quotient(f, c.lambda)) < 1e-7);
            CHECK(!res.probes.empty());

            // bisection agrees with the independent scan-and-secant root
            const double scanned = oracle::com_root_scan(f, p);
            const double found = res.xi_sign > 0 ? res.delta : 1.0 / res.delta;
            CHECK(std::abs(std::log(found / scanned)) < 1e-8);

            // the transported COM equals the residual on the mass measure
            CHECK(std::abs(mass_com_residual(f, p, found) - res.residual.back()) <= 1e-10 * mass);
        }
    }
}

TEST_CASE("normalizing an optimizer recovers the constant")
{
    for (const Config& c : kConfigs) {
        const double p = Params(c.n, c.lambda).p();
        for (double r : {0.3, 0.5, 0.9}) {
            const ComResult res = com_normalize(hls_optimizer(c.n, c.lambda, r), p);
            INFO("n=" << c.n << " r=" << r);
            CHECK(sup_relative_spread(*res.transported) < 1e-8);
            // second pass is the identity
            const ComResult again = com_normalize(*res.transported, p);
            CHECK(std::abs(again.delta - 1.0) < 1e-8);
            CHECK(sup_relative_spread(*again.transported) < 1e-8);
        }
    }
}

TEST_CASE("centered inputs return immediately")
{
    const ZonalFn even = ZonalFn::sample(2, [](double t) { return 1.0 + t * t; });
    const ComResult res = com_normalize(even, 2.0);
    CHECK(res.delta == 1.0);
    CHECK(res.iterations == 0);
}

TEST_CASE("invalid inputs")
{
    const ZonalFn zero = ZonalFn::sample(2, [](double) { return 0.0; });
    CHECK_THROWS_AS(com_normalize(zero, 2.0), DomainError);
    const ZonalFn negative = ZonalFn::sample(2, [](double t) { return t - 0.5; });
    CHECK_THROWS_AS(com_normalize(negative, 2.0), DomainError);

    // mass concentrated further than the bracket reaches
    ComOptions narrow;
    narrow.log_delta_min = -0.01;
    narrow.log_delta_max = 0.01;
    const ZonalFn peaked = ZonalFn::sample(2, [](double t) { return std::exp(4.0 * t); });
    CHECK_THROWS_AS(com_normalize(peaked, 2.0, narrow), NoRootError);
}
