#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "gblab/errors.hpp"

namespace gblab {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

struct Domain {
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;
    bool u_periodic = false;
    bool v_periodic = false;

    double u_extent() const { return u_max - u_min; }
    double v_extent() const { return v_max - v_min; }

    // Periodic axes always pass; non-periodic axes allow `slack` overshoot.
    bool contains(double u, double v, double slack = 0.0) const;

    // Pull (u,v) back into the box on non-periodic axes. Periodic axes are
    // left untouched (chart functions are periodic by construction).
    Vec2 clamped(double u, double v) const;
};

/// First (g) and second (b) fundamental forms in the {r_u, r_v} basis.
struct FundamentalForms {
    Mat2 g;
    Mat2 b;

    double det_g() const { return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0); }
    Mat2 shape_operator() const;  // g^{-1} b
};

struct SurfacePoint {
    double u = 0.0, v = 0.0;
    Vec3 position = Vec3::Zero();
    Vec3 normal = Vec3::Zero();
    bool pole_ambiguous = false;  // set when the chart azimuth is undefined
};

/// Everything evaluated at one (u,v); built once and shared by the ops.
struct ChartData {
    Vec3 position, ru, rv, ruu, ruv, rvv;
    Vec3 normal;          // unit, along ru x rv
    double area_element;  // |ru x rv| = sqrt(det g)
    Mat2 g, b;
};

/// A chart r(u,v) into 3-space, with derivative data and its parameter
/// rectangle. Catalog surfaces carry analytic partials; user charts fall back
/// to central differences with h = 1e-5 * per-axis extent.
class ParametricSurface {
public:
    using ChartFn = std::function<Vec3(double, double)>;

    ParametricSurface() = default;

    static ParametricSurface from_chart(std::string name, ChartFn chart, Domain domain);
    static ParametricSurface with_first_partials(std::string name, ChartFn chart, ChartFn ru,
                                                 ChartFn rv, Domain domain);
    static ParametricSurface analytic(std::string name, ChartFn chart, ChartFn ru, ChartFn rv,
                                      ChartFn ruu, ChartFn ruv, ChartFn rvv, Domain domain);

    Vec3 chart(double u, double v) const { return chart_(u, v); }
    Vec3 d_u(double u, double v) const { return ru_(u, v); }
    Vec3 d_v(double u, double v) const { return rv_(u, v); }
    Vec3 d_uu(double u, double v) const { return ruu_(u, v); }
    Vec3 d_uv(double u, double v) const { return ruv_(u, v); }
    Vec3 d_vv(double u, double v) const { return rvv_(u, v); }

    const Domain& domain() const { return domain_; }
    const std::string& name() const { return name_; }

    // Euler characteristic metadata; set only for closed catalog surfaces.
    std::optional<int> euler_char;

    double regularity_eps = 1e-12;

private:
    std::string name_;
    ChartFn chart_, ru_, rv_, ruu_, ruv_, rvv_;
    Domain domain_;
};

/// Evaluates the chart bundle at (u,v). Throws DegenerateChart when
/// |r_u x r_v| falls below the surface's regularity epsilon.
ChartData eval_chart(const ParametricSurface& surface, double u, double v);

Vec3 unit_normal(const ParametricSurface& surface, double u, double v);
FundamentalForms fundamental_forms(const ParametricSurface& surface, double u, double v);

/// K = det b / det g  (length^-2).
double gaussian_curvature(const ParametricSurface& surface, double u, double v);

/// Eigenvalues of the shape operator g^{-1} b, returned with k1 >= k2.
/// With outward normals the unit sphere yields k1 = k2 = -1; the sign follows
/// b_ij = r_ij . N directly and is pinned by tests rather than flipped.
std::pair<double, double> principal_curvatures(const ParametricSurface& surface, double u,
                                               double v);

SurfacePoint surface_point(const ParametricSurface& surface, double u, double v);

/// The unit normal viewed as a point of S^2, with (u,v) = (azimuth, latitude).
SurfacePoint gauss_map(const ParametricSurface& surface, double u, double v);

/// Ambient derivatives of the unit normal along the chart directions,
/// obtained from the shape operator (no extra differencing).
void normal_derivatives(const ChartData& data, Vec3& n_u, Vec3& n_v);

}  // namespace gblab
