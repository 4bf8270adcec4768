#pragma once

#include <array>
#include <functional>
#include <string>

#include <json.hpp>

#include "gblab/curve.hpp"
#include "gblab/region.hpp"
#include "gblab/surface.hpp"
#include "gblab/transport.hpp"

namespace gblab {

enum class Identity {
    DeficitVsIntegral,  // loop deficit against the enclosed curvature integral
    StokesLoop,         // line integral of the sphere deficit field
    GaussMapDeficit,    // deficit along a curve vs along its normal image
    TriangleExcess,     // geodesic triangle angle excess vs enclosed curvature
    TotalCurvature,     // closed surface total vs 2*pi*chi
    Foucault,
};

const char* identity_name(Identity identity);

struct VerificationReport {
    Identity identity = Identity::TotalCurvature;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_error = 0.0;  // |lhs - rhs| exactly
    double rel_error = 0.0;
    int n_u = 0, n_v = 0;    // quadrature resolution, when applicable
    int steps = 0;           // transport steps, when applicable
};

VerificationReport make_report(Identity identity, double lhs, double rhs, int n_u = 0,
                               int n_v = 0, int steps = 0);
nlohmann::ordered_json to_json(const VerificationReport& report);

/// Midpoint tensor-product quadrature of K dA = K sqrt(det g) du dv over the
/// region; cells are visited row-major and summed with compensation, so the
/// result is independent of evaluation batching. Cells are skipped only when
/// the indicator rejects their center; a degenerate chart elsewhere throws.
double integrate_curvature(const ParametricSurface& surface, const ParamRegion& region);

VerificationReport verify_deficit_equals_integral(const ParametricSurface& surface,
                                                  const ParamCurve& curve,
                                                  const ParamRegion& region, int steps);

/// The deficit field on the unit sphere, defined off the z-axis for z >= 0:
/// F = (1 - sqrt(1 - x^2 - y^2)) / (x^2 + y^2) * (-y, x, 0).
Vec3 stokes_field(const Vec3& p);

/// Line integral of the deficit field around a closed curve on the unit
/// sphere (composite Simpson). Requires the curve to stay in the open upper
/// half-sphere and away from the z-axis.
double stokes_deficit_sphere(const ParamCurve& curve, int steps);

/// curl of a 3-vector field by central differences.
Vec3 curl_central_difference(const std::function<Vec3(const Vec3&)>& field, const Vec3& p,
                             double h = 1e-5);

/// The normal-image curve on the unit sphere chart (azimuth, latitude),
/// with an analytic derivative via the shape operator.
ParamCurve gauss_image_curve(const ParametricSurface& surface, const ParamCurve& curve,
                             int samples);

/// Deficit along the curve vs deficit along its normal image on the unit
/// sphere, both transported at the same step count.
VerificationReport verify_gauss_map_deficit(const ParametricSurface& surface,
                                            const ParamCurve& curve, int steps);

struct GeodesicEdge {
    ParamCurve curve;
    Vec3 start_dir = Vec3::Zero();  // unit tangent leaving the first endpoint
    Vec3 end_dir = Vec3::Zero();    // unit tangent arriving at the second
    double length = 0.0;
    std::vector<Vec2> track;        // parameter-space samples, start to end
};

/// Boundary-value geodesic by shooting + bisection on the launch angle;
/// terminal miss below 1e-8 in 3-space or GeodesicShootingFailed.
GeodesicEdge connect_geodesic(const ParametricSurface& surface, Vec2 a, Vec2 b, int steps);

/// lhs: interior angle sum minus pi; rhs: curvature integral over the
/// triangle, with the region built by a winding test over the edge tracks.
VerificationReport geodesic_triangle_excess(const ParametricSurface& surface,
                                            const std::array<Vec2, 3>& vertices, int steps,
                                            int resolution = 1024);

/// Full-domain curvature integral against 2*pi*chi. Default resolution is
/// 1024 cells on periodic axes and 4096 on non-periodic ones (midpoint error
/// on a bounded axis needs the finer grid; periodic axes converge spectrally).
VerificationReport total_curvature(const ParametricSurface& surface, int n_u = 0, int n_v = 0);

/// Degrees per sidereal day: 360 sin(latitude). Positive means clockwise as
/// seen from above in the northern hemisphere.
double foucault_rotation(double latitude_degrees);

}  // namespace gblab
