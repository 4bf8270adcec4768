#pragma once

// Shared helpers and independent oracles for the test suites. The oracles
// here never call the code paths they check: the strip deficit integrates
// the normal track directly, and the finite-difference surfaces rebuild
// derivatives from the chart alone.

#include <cmath>
#include <numbers>
#include <random>

#include "gblab/catalog.hpp"
#include "gblab/curve.hpp"
#include "gblab/surface.hpp"

namespace gbtest {

using namespace gblab;

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

inline double wrap_pi(double a) {
    a = std::fmod(a + kPi, kTau);
    if (a < 0) a += kTau;
    return a - kPi;
}

// Deficit of a closed loop from its normal track alone: accumulate
// (1 - sin(latitude)) d(azimuth) along finely sampled unit normals.
// Valid when the normals stay away from +-z.
inline double strip_deficit(const ParametricSurface& surface, const ParamCurve& curve,
                            int n = 20000) {
    double acc = 0.0;
    double prev_az = 0.0, prev_lat = 0.0;
    for (int k = 0; k <= n; ++k) {
        const Vec2 q = curve.at(double(k) / n);
        const Vec3 nrm = unit_normal(surface, q.x(), q.y());
        const double az = std::atan2(nrm.y(), nrm.x());
        const double lat = std::asin(std::clamp(nrm.z(), -1.0, 1.0));
        if (k > 0) acc += (1.0 - std::sin(0.5 * (lat + prev_lat))) * wrap_pi(az - prev_az);
        prev_az = az;
        prev_lat = lat;
    }
    return acc;
}

// Unit sphere under a stereographic-style chart (projection from the north
// pole onto the equatorial plane), with hand-derived first partials.
inline ParametricSurface stereographic_sphere() {
    auto chart = [](double u, double v) {
        const double w = 1.0 + u * u + v * v;
        return Vec3(2.0 * u / w, 2.0 * v / w, (u * u + v * v - 1.0) / w);
    };
    auto ru = [](double u, double v) {
        const double w = 1.0 + u * u + v * v;
        return Vec3(2.0 * (1.0 + v * v - u * u) / (w * w), -4.0 * u * v / (w * w),
                    4.0 * u / (w * w));
    };
    auto rv = [](double u, double v) {
        const double w = 1.0 + u * u + v * v;
        return Vec3(-4.0 * u * v / (w * w), 2.0 * (1.0 + u * u - v * v) / (w * w),
                    4.0 * v / (w * w));
    };
    Domain dom{-3.0, 3.0, -3.0, 3.0, false, false};
    return ParametricSurface::with_first_partials("stereographic_sphere", chart, ru, rv, dom);
}

// Rebuilds a surface from its chart only, using central differences at the
// given steps; used to measure the finite-difference convergence order.
inline ParametricSurface fd_surface(const ParametricSurface& src, double hu, double hv) {
    auto chart = [&src](double u, double v) { return src.chart(u, v); };
    return ParametricSurface::analytic(
        src.name() + "_fd", chart,
        [chart, hu](double u, double v) {
            return Vec3((chart(u + hu, v) - chart(u - hu, v)) / (2 * hu));
        },
        [chart, hv](double u, double v) {
            return Vec3((chart(u, v + hv) - chart(u, v - hv)) / (2 * hv));
        },
        [chart, hu](double u, double v) {
            return Vec3((chart(u + hu, v) - 2 * chart(u, v) + chart(u - hu, v)) / (hu * hu));
        },
        [chart, hu, hv](double u, double v) {
            return Vec3((chart(u + hu, v + hv) - chart(u + hu, v - hv) - chart(u - hu, v + hv) +
                         chart(u - hu, v - hv)) /
                        (4 * hu * hv));
        },
        [chart, hv](double u, double v) {
            return Vec3((chart(u, v + hv) - 2 * chart(u, v) + chart(u, v - hv)) / (hv * hv));
        },
        src.domain());
}

inline double rand_in(std::mt19937_64& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

// Random point well inside the domain (10% margin per axis).
inline Vec2 interior_point(std::mt19937_64& rng, const ParametricSurface& surface) {
    const Domain& d = surface.domain();
    return Vec2(rand_in(rng, d.u_min + 0.1 * d.u_extent(), d.u_max - 0.1 * d.u_extent()),
                rand_in(rng, d.v_min + 0.1 * d.v_extent(), d.v_max - 0.1 * d.v_extent()));
}

}  // namespace gbtest
