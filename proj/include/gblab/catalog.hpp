#pragma once

#include <string>

#include "gblab/surface.hpp"

namespace gblab {

// Spherical charts exclude the poles by this margin; see the rotated-chart
// note in the docs for behaviour near |phi| = pi/2.
inline constexpr double kPoleMargin = 1e-9;

/// r(theta, phi) = R (cos t cos p, sin t cos p, sin p); outward normal.
ParametricSurface make_sphere(double radius);

/// Ring radius R, tube radius r; psi = 0 is the outer equator, psi = pi the
/// inner one. K = cos(psi) / (r (R + r cos psi)); outward normal.
ParametricSurface make_torus(double ring_radius, double tube_radius);

ParametricSurface make_cylinder(double radius, double half_height = 1.0);

/// Half-angle measured from the axis; apex excluded via v in [0.1, 2].
ParametricSurface make_cone(double half_angle);

ParametricSurface make_ellipsoid(double a, double b, double c);

ParametricSurface make_plane(double half_extent = 4.0);

/// Catalog lookup for CLI-style specs: "sphere:1", "torus:2,1",
/// "cylinder:1", "cone:30deg", "ellipsoid:1,0.8,0.5", "plane".
/// Throws std::invalid_argument on unknown names or bad parameters.
ParametricSurface parse_surface_spec(const std::string& spec);

}  // namespace gblab
