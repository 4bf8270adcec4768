#include "gblab/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gblab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> parse_params(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // strip an optional "deg" suffix; values stay as written
        const auto pos = tok.find("deg");
        if (pos != std::string::npos) tok = tok.substr(0, pos);
        size_t used = 0;
        const double value = std::stod(tok, &used);
        if (used == 0) throw std::invalid_argument("bad numeric parameter: " + tok);
        out.push_back(value);
    }
    return out;
}

}  // namespace

ParametricSurface make_sphere(double radius) {
    if (radius <= 0) throw std::invalid_argument("sphere radius must be positive");
    const double R = radius;
    Domain dom{0.0, 2.0 * kPi, -kPi / 2 + kPoleMargin, kPi / 2 - kPoleMargin, true, false};
    auto s = ParametricSurface::analytic(
        "sphere",
        [R](double t, double p) {
            return Vec3(R * std::cos(t) * std::cos(p), R * std::sin(t) * std::cos(p),
                        R * std::sin(p));
        },
        [R](double t, double p) {
            return Vec3(-R * std::sin(t) * std::cos(p), R * std::cos(t) * std::cos(p), 0.0);
        },
        [R](double t, double p) {
            return Vec3(-R * std::cos(t) * std::sin(p), -R * std::sin(t) * std::sin(p),
                        R * std::cos(p));
        },
        [R](double t, double p) {
            return Vec3(-R * std::cos(t) * std::cos(p), -R * std::sin(t) * std::cos(p), 0.0);
        },
        [R](double t, double p) {
            return Vec3(R * std::sin(t) * std::sin(p), -R * std::cos(t) * std::sin(p), 0.0);
        },
        [R](double t, double p) {
            return Vec3(-R * std::cos(t) * std::cos(p), -R * std::sin(t) * std::cos(p),
                        -R * std::sin(p));
        },
        dom);
    s.euler_char = 2;
    return s;
}

ParametricSurface make_torus(double ring_radius, double tube_radius) {
    if (ring_radius <= tube_radius || tube_radius <= 0)
        throw std::invalid_argument("torus requires R > r > 0");
    const double R = ring_radius, r = tube_radius;
    Domain dom{0.0, 2.0 * kPi, -kPi, kPi, true, true};
    auto s = ParametricSurface::analytic(
        "torus",
        [R, r](double t, double p) {
            const double w = R + r * std::cos(p);
            return Vec3(w * std::cos(t), w * std::sin(t), r * std::sin(p));
        },
        [R, r](double t, double p) {
            const double w = R + r * std::cos(p);
            return Vec3(-w * std::sin(t), w * std::cos(t), 0.0);
        },
        [r](double t, double p) {
            return Vec3(-r * std::sin(p) * std::cos(t), -r * std::sin(p) * std::sin(t),
                        r * std::cos(p));
        },
        [R, r](double t, double p) {
            const double w = R + r * std::cos(p);
            return Vec3(-w * std::cos(t), -w * std::sin(t), 0.0);
        },
        [r](double t, double p) {
            return Vec3(r * std::sin(p) * std::sin(t), -r * std::sin(p) * std::cos(t), 0.0);
        },
        [r](double t, double p) {
            return Vec3(-r * std::cos(p) * std::cos(t), -r * std::cos(p) * std::sin(t),
                        -r * std::sin(p));
        },
        dom);
    s.euler_char = 0;
    return s;
}

ParametricSurface make_cylinder(double radius, double half_height) {
    if (radius <= 0 || half_height <= 0)
        throw std::invalid_argument("cylinder requires positive radius and height");
    const double R = radius;
    Domain dom{0.0, 2.0 * kPi, -half_height, half_height, true, false};
    return ParametricSurface::analytic(
        "cylinder",
        [R](double u, double v) { return Vec3(R * std::cos(u), R * std::sin(u), v); },
        [R](double u, double) { return Vec3(-R * std::sin(u), R * std::cos(u), 0.0); },
        [](double, double) { return Vec3(0.0, 0.0, 1.0); },
        [R](double u, double) { return Vec3(-R * std::cos(u), -R * std::sin(u), 0.0); },
        [](double, double) { return Vec3::Zero(); },
        [](double, double) { return Vec3::Zero(); }, dom);
}

ParametricSurface make_cone(double half_angle) {
    if (half_angle <= 0 || half_angle >= kPi / 2)
        throw std::invalid_argument("cone half-angle must be in (0, pi/2)");
    const double s = std::sin(half_angle), c = std::cos(half_angle);
    Domain dom{0.0, 2.0 * kPi, 0.1, 2.0, true, false};
    return ParametricSurface::analytic(
        "cone",
        [s, c](double u, double v) {
            return Vec3(v * s * std::cos(u), v * s * std::sin(u), v * c);
        },
        [s](double u, double v) {
            return Vec3(-v * s * std::sin(u), v * s * std::cos(u), 0.0);
        },
        [s, c](double u, double) { return Vec3(s * std::cos(u), s * std::sin(u), c); },
        [s](double u, double v) {
            return Vec3(-v * s * std::cos(u), -v * s * std::sin(u), 0.0);
        },
        [s](double u, double) { return Vec3(-s * std::sin(u), s * std::cos(u), 0.0); },
        [](double, double) { return Vec3::Zero(); }, dom);
}

ParametricSurface make_ellipsoid(double a, double b, double c) {
    if (a <= 0 || b <= 0 || c <= 0)
        throw std::invalid_argument("ellipsoid semi-axes must be positive");
    Domain dom{0.0, 2.0 * kPi, -kPi / 2 + kPoleMargin, kPi / 2 - kPoleMargin, true, false};
    auto s = ParametricSurface::analytic(
        "ellipsoid",
        [a, b, c](double t, double p) {
            return Vec3(a * std::cos(t) * std::cos(p), b * std::sin(t) * std::cos(p),
                        c * std::sin(p));
        },
        [a, b](double t, double p) {
            return Vec3(-a * std::sin(t) * std::cos(p), b * std::cos(t) * std::cos(p), 0.0);
        },
        [a, b, c](double t, double p) {
            return Vec3(-a * std::cos(t) * std::sin(p), -b * std::sin(t) * std::sin(p),
                        c * std::cos(p));
        },
        [a, b](double t, double p) {
            return Vec3(-a * std::cos(t) * std::cos(p), -b * std::sin(t) * std::cos(p), 0.0);
        },
        [a, b](double t, double p) {
            return Vec3(a * std::sin(t) * std::sin(p), -b * std::cos(t) * std::sin(p), 0.0);
        },
        [a, b, c](double t, double p) {
            return Vec3(-a * std::cos(t) * std::cos(p), -b * std::sin(t) * std::cos(p),
                        -c * std::sin(p));
        },
        dom);
    s.euler_char = 2;
    return s;
}

ParametricSurface make_plane(double half_extent) {
    Domain dom{-half_extent, half_extent, -half_extent, half_extent, false, false};
    return ParametricSurface::analytic(
        "plane", [](double u, double v) { return Vec3(u, v, 0.0); },
        [](double, double) { return Vec3(1.0, 0.0, 0.0); },
        [](double, double) { return Vec3(0.0, 1.0, 0.0); },
        [](double, double) { return Vec3::Zero(); },
        [](double, double) { return Vec3::Zero(); },
        [](double, double) { return Vec3::Zero(); }, dom);
}

ParametricSurface parse_surface_spec(const std::string& spec) {
    std::string name = spec;
    std::vector<double> params;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        params = parse_params(spec.substr(colon + 1));
    }
    auto want = [&](size_t lo, size_t hi) {
        if (params.size() < lo || params.size() > hi)
            throw std::invalid_argument("surface '" + name + "': wrong parameter count");
    };
    if (name == "sphere") {
        want(1, 1);
        return make_sphere(params[0]);
    }
    if (name == "torus") {
        want(2, 2);
        return make_torus(params[0], params[1]);
    }
    if (name == "cylinder") {
        want(1, 2);
        return make_cylinder(params[0], params.size() > 1 ? params[1] : 1.0);
    }
    if (name == "cone") {
        want(1, 1);
        return make_cone(params[0] * std::numbers::pi / 180.0);
    }
    if (name == "ellipsoid") {
        want(3, 3);
        return make_ellipsoid(params[0], params[1], params[2]);
    }
    if (name == "plane") {
        want(0, 1);
        return make_plane(params.empty() ? 4.0 : params[0]);
    }
    throw std::invalid_argument("unknown surface: " + name);
}

}  // namespace gblab
