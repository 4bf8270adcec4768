#include "gblab/surface.hpp"

#include <algorithm>
#include <cmath>

namespace gblab {

bool Domain::contains(double u, double v, double slack) const {
    if (!u_periodic && (u < u_min - slack || u > u_max + slack)) return false;
    if (!v_periodic && (v < v_min - slack || v > v_max + slack)) return false;
    return true;
}

Vec2 Domain::clamped(double u, double v) const {
    if (!u_periodic) u = std::clamp(u, u_min, u_max);
    if (!v_periodic) v = std::clamp(v, v_min, v_max);
    return {u, v};
}

Mat2 FundamentalForms::shape_operator() const {
    const double det = det_g();
    Mat2 g_inv;
    g_inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    g_inv /= det;
    return g_inv * b;
}

namespace {

ParametricSurface::ChartFn fd_partial(ParametricSurface::ChartFn f, double h, bool along_u) {
    return [f = std::move(f), h, along_u](double u, double v) -> Vec3 {
        if (along_u) return (f(u + h, v) - f(u - h, v)) / (2.0 * h);
        return (f(u, v + h) - f(u, v - h)) / (2.0 * h);
    };
}

ParametricSurface::ChartFn fd_second(ParametricSurface::ChartFn f, double h, bool along_u) {
    return [f = std::move(f), h, along_u](double u, double v) -> Vec3 {
        if (along_u) return (f(u + h, v) - 2.0 * f(u, v) + f(u - h, v)) / (h * h);
        return (f(u, v + h) - 2.0 * f(u, v) + f(u, v - h)) / (h * h);
    };
}

ParametricSurface::ChartFn fd_mixed(ParametricSurface::ChartFn f, double hu, double hv) {
    return [f = std::move(f), hu, hv](double u, double v) -> Vec3 {
        return (f(u + hu, v + hv) - f(u + hu, v - hv) - f(u - hu, v + hv) +
                f(u - hu, v - hv)) /
               (4.0 * hu * hv);
    };
}

}  // namespace

ParametricSurface ParametricSurface::from_chart(std::string name, ChartFn chart, Domain domain) {
    const double hu = 1e-5 * domain.u_extent();
    const double hv = 1e-5 * domain.v_extent();
    ParametricSurface s;
    s.name_ = std::move(name);
    s.domain_ = domain;
    s.ru_ = fd_partial(chart, hu, true);
    s.rv_ = fd_partial(chart, hv, false);
    s.ruu_ = fd_second(chart, hu, true);
    s.rvv_ = fd_second(chart, hv, false);
    s.ruv_ = fd_mixed(chart, hu, hv);
    s.chart_ = std::move(chart);
    return s;
}

ParametricSurface ParametricSurface::with_first_partials(std::string name, ChartFn chart,
                                                         ChartFn ru, ChartFn rv, Domain domain) {
    const double hu = 1e-5 * domain.u_extent();
    const double hv = 1e-5 * domain.v_extent();
    ParametricSurface s;
    s.name_ = std::move(name);
    s.domain_ = domain;
    s.chart_ = std::move(chart);
    s.ruu_ = fd_partial(ru, hu, true);
    s.ruv_ = fd_partial(ru, hv, false);
    s.rvv_ = fd_partial(rv, hv, false);
    s.ru_ = std::move(ru);
    s.rv_ = std::move(rv);
    return s;
}

ParametricSurface ParametricSurface::analytic(std::string name, ChartFn chart, ChartFn ru,
                                              ChartFn rv, ChartFn ruu, ChartFn ruv, ChartFn rvv,
                                              Domain domain) {
    ParametricSurface s;
    s.name_ = std::move(name);
    s.domain_ = domain;
    s.chart_ = std::move(chart);
    s.ru_ = std::move(ru);
    s.rv_ = std::move(rv);
    s.ruu_ = std::move(ruu);
    s.ruv_ = std::move(ruv);
    s.rvv_ = std::move(rvv);
    return s;
}

ChartData eval_chart(const ParametricSurface& surface, double u, double v) {
    ChartData d;
    d.position = surface.chart(u, v);
    d.ru = surface.d_u(u, v);
    d.rv = surface.d_v(u, v);
    const Vec3 cross = d.ru.cross(d.rv);
    d.area_element = cross.norm();
    if (d.area_element < surface.regularity_eps) {
        throw DegenerateChart(surface.name() + ": |r_u x r_v| = " +
                              std::to_string(d.area_element) + " at (u,v)=(" +
                              std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    d.normal = cross / d.area_element;
    d.ruu = surface.d_uu(u, v);
    d.ruv = surface.d_uv(u, v);
    d.rvv = surface.d_vv(u, v);
    d.g << d.ru.dot(d.ru), d.ru.dot(d.rv), d.ru.dot(d.rv), d.rv.dot(d.rv);
    d.b << d.ruu.dot(d.normal), d.ruv.dot(d.normal), d.ruv.dot(d.normal), d.rvv.dot(d.normal);
    return d;
}

Vec3 unit_normal(const ParametricSurface& surface, double u, double v) {
    return eval_chart(surface, u, v).normal;
}

FundamentalForms fundamental_forms(const ParametricSurface& surface, double u, double v) {
    const ChartData d = eval_chart(surface, u, v);
    return FundamentalForms{d.g, d.b};
}

double gaussian_curvature(const ParametricSurface& surface, double u, double v) {
    const ChartData d = eval_chart(surface, u, v);
    const double det_b = d.b(0, 0) * d.b(1, 1) - d.b(0, 1) * d.b(1, 0);
    return det_b / (d.area_element * d.area_element);
}

std::pair<double, double> principal_curvatures(const ParametricSurface& surface, double u,
                                               double v) {
    const FundamentalForms f = fundamental_forms(surface, u, v);
    const Mat2 shape = f.shape_operator();
    const double tr = shape(0, 0) + shape(1, 1);
    const double det = shape(0, 0) * shape(1, 1) - shape(0, 1) * shape(1, 0);
    const double disc = std::max(0.0, tr * tr - 4.0 * det);
    const double root = std::sqrt(disc);
    return {(tr + root) / 2.0, (tr - root) / 2.0};
}

SurfacePoint surface_point(const ParametricSurface& surface, double u, double v) {
    const ChartData d = eval_chart(surface, u, v);
    SurfacePoint p;
    p.u = u;
    p.v = v;
    p.position = d.position;
    p.normal = d.normal;
    return p;
}

SurfacePoint gauss_map(const ParametricSurface& surface, double u, double v) {
    const Vec3 n = unit_normal(surface, u, v);
    SurfacePoint image;
    image.position = n;
    image.normal = n;
    const double horizontal = std::hypot(n.x(), n.y());
    if (horizontal < 1e-12) {
        image.pole_ambiguous = true;
        image.u = 0.0;  // azimuth undefined at the poles
    } else {
        image.u = std::atan2(n.y(), n.x());
    }
    image.v = std::asin(std::clamp(n.z(), -1.0, 1.0));
    return image;
}

void normal_derivatives(const ChartData& data, Vec3& n_u, Vec3& n_v) {
    const FundamentalForms forms{data.g, data.b};
    const Mat2 shape = forms.shape_operator();
    n_u = -(shape(0, 0) * data.ru + shape(1, 0) * data.rv);
    n_v = -(shape(0, 1) * data.ru + shape(1, 1) * data.rv);
}

}  // namespace gblab
