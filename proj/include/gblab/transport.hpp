#pragma once

#include <utility>
#include <vector>

#include "gblab/curve.hpp"
#include "gblab/surface.hpp"

namespace gblab {

inline constexpr int kDefaultSteps = 4096;

/// Sampled transported field along a curve plus the accumulated angle.
///
/// `deficit_angle` is the rotation of w relative to the chart frame
/// e1 = r_u/|r_u|, accumulated per step with increments wrapped to (-pi, pi).
/// For closed curves a winding correction 2*pi*W is added, where W counts the
/// full turns of the frame's horizontal azimuth around the loop; this keeps
/// values such as pi or 3*pi/2 unambiguous and makes the result agree with
/// the curvature integral over the enclosed region.
struct TransportResult {
    std::vector<std::pair<double, Vec3>> samples;  // (t, w)
    double deficit_angle = 0.0;                    // radians, signed
    double norm_drift = 0.0;                       // pre-correction drift of |w|
};

/// Integrates dw/dt = -(w . dN/dt) N with classical fixed-step RK4.
/// After each step w is re-projected onto the tangent plane and rescaled to
/// |w0|; norm_drift reports the compounded pre-correction deviation.
TransportResult parallel_transport(const ParametricSurface& surface, const ParamCurve& curve,
                                   Vec3 w0, int steps);

/// Transports a unit tangent around a closed positively-oriented loop and
/// returns the signed accumulated deficit angle. Independent of the choice of
/// start vector up to integration error.
double deficit_angle(const ParametricSurface& surface, const ParamCurve& curve, int steps);

/// Shoots the constant-speed curve with purely normal acceleration.
/// `direction` is a tangent 3-vector at `start`; the result is parametrized
/// over t in [0,1] covering the requested arc length.
ParamCurve integrate_geodesic(const ParametricSurface& surface, Vec2 start, Vec3 direction,
                              double arc_length, int steps);

/// a_T = a - (a.N) N at curve parameter t.
Vec3 tangential_acceleration(const ParametricSurface& surface, const ParamCurve& curve, double t);

/// |omega(t)| = |a_T| / |v|, the frame rotation rate along the curve.
double rotation_rate(const ParametricSurface& surface, const ParamCurve& curve, double t);

}  // namespace gblab
