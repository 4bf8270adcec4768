#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gblab/surface.hpp"

namespace gblab {

/// A path t in [0,1] -> (u(t), v(t)) in a surface's parameter domain.
/// `corner_times` lists interior parameters where the derivative jumps
/// (polyline corners); integrators align step boundaries with them and the
/// transported vector itself passes through corners unchanged.
struct ParamCurve {
    std::function<Vec2(double)> path;
    std::function<Vec2(double)> derivative;  // optional; central differences otherwise
    bool closed = false;
    std::vector<double> corner_times;

    Vec2 at(double t) const { return path(t); }
    Vec2 velocity(double t) const;
};

/// Sphere-chart latitude circle at phi, counterclockwise (eastward).
ParamCurve latitude_loop(double phi);

/// Torus loop at constant tube angle psi, increasing theta.
ParamCurve tube_loop(double psi);

/// Torus meridian circle at fixed theta (wraps around the tube); a geodesic.
ParamCurve meridian_loop(double theta);

/// Circle of the given radius in the parameter plane.
ParamCurve circle_loop(double radius, Vec2 center = Vec2::Zero());

/// Boundary of [u0,u1] x [v0,v1], counterclockwise, corners at t = k/4.
ParamCurve rect_loop(double u0, double v0, double u1, double v1);

/// Closed polyline through the given parameter points, corners at t = k/n.
ParamCurve polyline_loop(std::vector<Vec2> points);

ParamCurve reversed(const ParamCurve& curve);

/// Curve through uniform samples with Hermite interpolation; derivatives are
/// per-unit-t. Used for integrated geodesics.
ParamCurve sampled_curve(std::vector<Vec2> nodes, std::vector<Vec2> tangents, bool closed);

}  // namespace gblab
