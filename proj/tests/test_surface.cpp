#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gblab/catalog.hpp"
#include "support.hpp"

using namespace gblab;
using gbtest::kPi;
using gbtest::kTau;

namespace {

std::vector<ParametricSurface> catalog() {
    std::vector<ParametricSurface> out;
    out.push_back(make_sphere(1.0));
    out.push_back(make_sphere(3.0));
    out.push_back(make_torus(2.0, 1.0));
    out.push_back(make_cylinder(1.0));
    out.push_back(make_cone(kPi / 6));
    out.push_back(make_ellipsoid(1.0, 0.8, 0.5));
    out.push_back(make_plane());
    return out;
}

}  // namespace

TEST_CASE("unit normal: sphere is radial, plane is vertical, torus spot value") {
    const auto sphere = make_sphere(1.0);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        const Vec2 q = gbtest::interior_point(rng, sphere);
        const Vec3 n = unit_normal(sphere, q.x(), q.y());
        const Vec3 p = sphere.chart(q.x(), q.y());
        CHECK((n - p).norm() < 1e-12);  // outward radial
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    const auto plane = make_plane();
    CHECK((unit_normal(plane, 0.3, -1.2) - Vec3(0, 0, 1)).norm() < 1e-15);

    const auto torus = make_torus(2.0, 1.0);
    CHECK((unit_normal(torus, 0.0, 0.0) - Vec3(1, 0, 0)).norm() < 1e-14);
}

TEST_CASE("normal is orthogonal to the tangent basis at random points") {
    std::mt19937_64 rng(11);
    for (const auto& surface : catalog()) {
        for (int k = 0; k < 1000; ++k) {
            const Vec2 q = gbtest::interior_point(rng, surface);
            const ChartData d = eval_chart(surface, q.x(), q.y());
            CHECK(std::abs(d.normal.dot(d.ru)) < 1e-9 * d.ru.norm());
            CHECK(std::abs(d.normal.dot(d.rv)) < 1e-9 * d.rv.norm());
        }
    }
}

TEST_CASE("degenerate charts are rejected, not silently NaN") {
    auto collapsed = ParametricSurface::from_chart(
        "collapsed", [](double u, double v) { return Vec3(u * v, u * v, 0.0); },
        Domain{0.0, 1.0, 0.0, 1.0, false, false});
    CHECK_THROWS_AS(unit_normal(collapsed, 0.5, 0.5), DegenerateChart);
    CHECK_THROWS_AS(gaussian_curvature(collapsed, 0.5, 0.5), DegenerateChart);
}

TEST_CASE("fundamental forms: plane, unit sphere equator, cylinder") {
    const auto plane = make_plane();
    const auto fp = fundamental_forms(plane, 0.7, -0.2);
    CHECK((fp.g - Mat2::Identity()).norm() < 1e-15);
    CHECK(fp.b.norm() < 1e-15);

    // outward normal makes b = -identity at the equator
    const auto sphere = make_sphere(1.0);
    const auto fs = fundamental_forms(sphere, 0.0, 0.0);
    CHECK((fs.g - Mat2::Identity()).norm() < 1e-12);
    CHECK((fs.b + Mat2::Identity()).norm() < 1e-12);
    CHECK(fs.b(0, 1) == fs.b(1, 0));  // symmetric by construction

    const auto cylinder = make_cylinder(1.0);
    const auto fc = fundamental_forms(cylinder, 1.1, 0.4);
    CHECK((fc.g - Mat2::Identity()).norm() < 1e-12);
    const auto [k1, k2] = principal_curvatures(cylinder, 1.1, 0.4);
    CHECK(k1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(k2 == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("metric is symmetric positive definite at random regular points") {
    std::mt19937_64 rng(13);
    for (const auto& surface : catalog()) {
        for (int k = 0; k < 200; ++k) {
            const Vec2 q = gbtest::interior_point(rng, surface);
            const auto f = fundamental_forms(surface, q.x(), q.y());
            CHECK(f.g(0, 0) > 0.0);
            CHECK(f.det_g() > 0.0);
        }
    }
}

TEST_CASE("gaussian curvature on the catalog") {
    std::mt19937_64 rng(17);
    for (double R : {0.5, 1.0, 3.0}) {
        const auto sphere = make_sphere(R);
        for (int k = 0; k < 20; ++k) {
            const Vec2 q = gbtest::interior_point(rng, sphere);
            CHECK(gaussian_curvature(sphere, q.x(), q.y()) ==
                  doctest::Approx(1.0 / (R * R)).epsilon(1e-9));
        }
    }
    for (const auto& flat : {make_plane(), make_cylinder(1.0), make_cone(kPi / 6)}) {
        for (int k = 0; k < 20; ++k) {
            const Vec2 q = gbtest::interior_point(rng, flat);
            CHECK(std::abs(gaussian_curvature(flat, q.x(), q.y())) < 1e-10);
        }
    }
    const double R = 2.0, r = 1.0;
    const auto torus = make_torus(R, r);
    for (int k = 0; k < 40; ++k) {
        const Vec2 q = gbtest::interior_point(rng, torus);
        const double expected = std::cos(q.y()) / (r * (R + r * std::cos(q.y())));
        CHECK(gaussian_curvature(torus, q.x(), q.y()) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
    // inner equator: negative curvature
    CHECK(gaussian_curvature(torus, 0.3, kPi) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("curvature equals det of the shape operator; principal identities hold") {
    std::mt19937_64 rng(19);
    for (const auto& surface : catalog()) {
        for (int k = 0; k < 200; ++k) {
            const Vec2 q = gbtest::interior_point(rng, surface);
            const double K = gaussian_curvature(surface, q.x(), q.y());
            const auto f = fundamental_forms(surface, q.x(), q.y());
            const Mat2 shape = f.shape_operator();
            const double det_shape = shape(0, 0) * shape(1, 1) - shape(0, 1) * shape(1, 0);
            CHECK(std::abs(K - det_shape) <= 1e-10 * std::max(1.0, std::abs(K)));

            const auto [k1, k2] = principal_curvatures(surface, q.x(), q.y());
            CHECK(k1 >= k2);
            CHECK(std::abs(k1 * k2 - K) <= 1e-9 * std::max(1.0, std::abs(K)));
            const double tr = shape(0, 0) + shape(1, 1);
            CHECK(std::abs(k1 + k2 - tr) <= 1e-9 * std::max(1.0, std::abs(tr)));
        }
    }
}

TEST_CASE("principal curvatures carry the outward-normal sign convention") {
    const auto sphere = make_sphere(1.0);
    const auto [k1, k2] = principal_curvatures(sphere, 0.4, 0.2);
    CHECK(k1 == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(k2 == doctest::Approx(-1.0).epsilon(1e-10));

    const auto plane = make_plane();
    const auto [p1, p2] = principal_curvatures(plane, 0.0, 0.0);
    CHECK(p1 == 0.0);
    CHECK(p2 == 0.0);
}

TEST_CASE("gauss map: sphere identity, plane single point, torus outer equator") {
    const auto sphere = make_sphere(1.0);
    std::mt19937_64 rng(23);
    for (int k = 0; k < 30; ++k) {
        const Vec2 q = gbtest::interior_point(rng, sphere);
        const SurfacePoint g = gauss_map(sphere, q.x(), q.y());
        CHECK((g.position - sphere.chart(q.x(), q.y())).norm() < 1e-12);
        CHECK(g.v == doctest::Approx(q.y()).epsilon(1e-12));
        CHECK(!g.pole_ambiguous);
    }

    const auto plane = make_plane();
    const SurfacePoint g1 = gauss_map(plane, 0.1, 0.2);
    const SurfacePoint g2 = gauss_map(plane, -2.0, 3.1);
    CHECK((g1.position - g2.position).norm() == 0.0);
    CHECK(g1.pole_ambiguous);
    CHECK(g1.u == 0.0);

    const auto torus = make_torus(2.0, 1.0);
    for (double theta : {0.0, 1.0, 2.5}) {
        const SurfacePoint g = gauss_map(torus, theta, 0.0);
        CHECK(std::abs(g.v) < 1e-12);  // image on the sphere equator
        CHECK((g.position - Vec3(std::cos(theta), std::sin(theta), 0.0)).norm() < 1e-12);
    }
}

TEST_CASE("finite-difference curvature converges at second order to analytic") {
    for (const auto& surface : {make_sphere(1.0), make_torus(2.0, 1.0)}) {
        const double hu = 1e-2 * surface.domain().u_extent();
        const double hv = 1e-2 * surface.domain().v_extent();
        const auto coarse = gbtest::fd_surface(surface, hu, hv);
        const auto fine = gbtest::fd_surface(surface, hu / 2, hv / 2);

        std::mt19937_64 rng(29);
        double ratio_sum = 0.0;
        int count = 0;
        for (int k = 0; k < 10; ++k) {
            const Vec2 q = gbtest::interior_point(rng, surface);
            const double exact = gaussian_curvature(surface, q.x(), q.y());
            const double e1 = std::abs(gaussian_curvature(coarse, q.x(), q.y()) - exact);
            const double e2 = std::abs(gaussian_curvature(fine, q.x(), q.y()) - exact);
            if (e1 < 1e-12 || e2 < 1e-13) continue;  // symmetry can cancel the leading term
            ratio_sum += e1 / e2;
            ++count;
        }
        REQUIRE(count >= 5);
        const double mean_ratio = ratio_sum / count;
        CHECK(mean_ratio >= 3.0);
        CHECK(mean_ratio <= 5.0);
    }
}

TEST_CASE("curvature is chart independent: spherical vs stereographic") {
    const auto spherical = make_sphere(1.0);
    const auto stereo = gbtest::stereographic_sphere();
    std::mt19937_64 rng(31);
    for (int k = 0; k < 50; ++k) {
        const double u = gbtest::rand_in(rng, -1.5, 1.5);
        const double v = gbtest::rand_in(rng, -1.5, 1.5);
        const Vec3 p = stereo.chart(u, v);
        CHECK(std::abs(p.norm() - 1.0) < 1e-12);  // same 3-space point set
        const double K_stereo = gaussian_curvature(stereo, u, v);
        const double theta = std::atan2(p.y(), p.x());
        const double phi = std::asin(std::clamp(p.z(), -1.0, 1.0));
        const double K_spherical = gaussian_curvature(spherical, theta, phi);
        CHECK(std::abs(K_stereo - K_spherical) < 1e-8);
    }
}

TEST_CASE("domain membership respects periodicity and slack") {
    const auto sphere = make_sphere(1.0);
    const Domain& d = sphere.domain();
    CHECK(d.contains(100.0, 0.0));          // periodic axis never rejects
    CHECK(!d.contains(0.0, kPi));           // latitude out of range
    CHECK(d.contains(0.0, kPi / 2, 1e-3));  // slack admits the overshoot
    const Vec2 c = d.clamped(0.0, kPi);
    CHECK(c.y() == d.v_max);
}
