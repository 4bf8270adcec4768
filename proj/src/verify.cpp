#include "gblab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gblab/catalog.hpp"

namespace gblab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;
}  // namespace

const char* identity_name(Identity identity) {
    switch (identity) {
        case Identity::DeficitVsIntegral: return "deficit_vs_integral";
        case Identity::StokesLoop: return "stokes_loop";
        case Identity::GaussMapDeficit: return "gauss_map_deficit";
        case Identity::TriangleExcess: return "triangle_excess";
        case Identity::TotalCurvature: return "total_curvature";
        case Identity::Foucault: return "foucault";
    }
    return "unknown";
}

VerificationReport make_report(Identity identity, double lhs, double rhs, int n_u, int n_v,
                               int steps) {
    VerificationReport r;
    r.identity = identity;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_error = std::abs(lhs - rhs);
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_error = denom > 0 ? r.abs_error / denom : 0.0;
    r.n_u = n_u;
    r.n_v = n_v;
    r.steps = steps;
    return r;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["identity"] = identity_name(report.identity);
    j["lhs"] = report.lhs;
    j["rhs"] = report.rhs;
    j["abs_error"] = report.abs_error;
    j["rel_error"] = report.rel_error;
    j["resolution"] = {report.n_u, report.n_v};
    j["steps"] = report.steps;
    return j;
}

double integrate_curvature(const ParametricSurface& surface, const ParamRegion& region) {
    if (region.n_u < 8 || region.n_v < 8)
        throw std::invalid_argument("integrate_curvature: resolution must be >= 8x8");
    const double hu = (region.u1 - region.u0) / region.n_u;
    const double hv = (region.v1 - region.v0) / region.n_v;

    double sum = 0.0, comp = 0.0;  // Kahan
    for (int j = 0; j < region.n_v; ++j) {
        const double vc = region.v0 + (j + 0.5) * hv;
        for (int i = 0; i < region.n_u; ++i) {
            const double uc = region.u0 + (i + 0.5) * hu;
            if (region.indicator && !region.indicator(uc, vc)) continue;
            const ChartData d = eval_chart(surface, uc, vc);
            const double det_b = d.b(0, 0) * d.b(1, 1) - d.b(0, 1) * d.b(1, 0);
            const double term = det_b / d.area_element * hu * hv;  // K sqrt(det g) du dv
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

VerificationReport verify_deficit_equals_integral(const ParametricSurface& surface,
                                                  const ParamCurve& curve,
                                                  const ParamRegion& region, int steps) {
    const double lhs = deficit_angle(surface, curve, steps);
    const double rhs = integrate_curvature(surface, region);
    return make_report(Identity::DeficitVsIntegral, lhs, rhs, region.n_u, region.n_v, steps);
}

Vec3 stokes_field(const Vec3& p) {
    const double rho2 = p.x() * p.x() + p.y() * p.y();
    const double root = std::sqrt(std::max(0.0, 1.0 - rho2));
    const double scale = (1.0 - root) / rho2;
    return Vec3(-scale * p.y(), scale * p.x(), 0.0);
}

double stokes_deficit_sphere(const ParamCurve& curve, int steps) {
    if (!curve.closed) throw NotClosed("stokes_deficit_sphere: curve is not closed");
    const ParametricSurface sphere = make_sphere(1.0);

    const int n = steps % 2 == 0 ? steps : steps + 1;
    const double h = 1.0 / n;

    auto integrand = [&](double t) {
        const Vec2 q = curve.at(t);
        const ChartData d = eval_chart(sphere, q.x(), q.y());
        const Vec3 p = d.position;
        if (p.z() < 1e-12)
            throw SouthernHemisphere("stokes_deficit_sphere: curve leaves the open upper "
                                     "half-sphere (z = " + std::to_string(p.z()) + ")");
        if (p.x() * p.x() + p.y() * p.y() < 1e-10)
            throw NearAxis("stokes_deficit_sphere: curve passes within 1e-5 of the z-axis");
        const Vec2 dq = curve.velocity(t);
        const Vec3 ds = dq.x() * d.ru + dq.y() * d.rv;
        return stokes_field(p).dot(ds);
    };

    double sum = integrand(0.0) + integrand(1.0);
    for (int k = 1; k < n; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * integrand(k * h);
    return sum * h / 3.0;
}

Vec3 curl_central_difference(const std::function<Vec3(const Vec3&)>& field, const Vec3& p,
                             double h) {
    auto d = [&](int axis) {
        Vec3 e = Vec3::Zero();
        e[axis] = h;
        return Vec3((field(p + e) - field(p - e)) / (2.0 * h));
    };
    const Vec3 dx = d(0), dy = d(1), dz = d(2);
    return Vec3(dy.z() - dz.y(), dz.x() - dx.z(), dx.y() - dy.x());
}

ParamCurve gauss_image_curve(const ParametricSurface& surface, const ParamCurve& curve,
                             int samples) {
    // Reject curves whose normal image stalls (K = 0 stretches): the image
    // would degenerate and its deficit would not be comparable.
    double max_rate = 0.0, min_rate = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= samples; ++k) {
        const double t = double(k) / samples;
        const Vec2 q = curve.at(t);
        const Vec2 dq = curve.velocity(t);
        const ChartData d = eval_chart(surface, q.x(), q.y());
        Vec3 nu, nv;
        normal_derivatives(d, nu, nv);
        const double rate = (dq.x() * nu + dq.y() * nv).norm();
        max_rate = std::max(max_rate, rate);
        min_rate = std::min(min_rate, rate);
    }
    if (max_rate < 1e-12 || min_rate < 1e-10 * max_rate)
        throw GaussMapDegenerate("gauss_image_curve: normal image has vanishing velocity");

    ParamCurve image;
    image.closed = curve.closed;
    image.corner_times = curve.corner_times;
    image.path = [surface, path = curve.path](double t) -> Vec2 {
        const Vec2 q = path(t);
        const Vec3 n = eval_chart(surface, q.x(), q.y()).normal;
        // azimuth jumps across +-pi are harmless: consumers only see the
        // chart position and frame, both periodic in the azimuth
        return Vec2(std::atan2(n.y(), n.x()), std::asin(std::clamp(n.z(), -1.0, 1.0)));
    };
    image.derivative = [surface, source = curve](double t) -> Vec2 {
        const Vec2 q = source.at(t);
        const Vec2 dq = source.velocity(t);
        const ChartData d = eval_chart(surface, q.x(), q.y());
        Vec3 nu, nv;
        normal_derivatives(d, nu, nv);
        const Vec3 ndot = dq.x() * nu + dq.y() * nv;
        const Vec3 n = d.normal;
        const double rho2 = n.x() * n.x() + n.y() * n.y();
        const double dazimuth = (n.x() * ndot.y() - n.y() * ndot.x()) / rho2;
        const double dlatitude = ndot.z() / std::sqrt(std::max(1e-30, 1.0 - n.z() * n.z()));
        return Vec2(dazimuth, dlatitude);
    };
    return image;
}

VerificationReport verify_gauss_map_deficit(const ParametricSurface& surface,
                                            const ParamCurve& curve, int steps) {
    const double lhs = deficit_angle(surface, curve, steps);
    const ParamCurve image = gauss_image_curve(surface, curve, steps);
    const double rhs = deficit_angle(make_sphere(1.0), image, steps);
    return make_report(Identity::GaussMapDeficit, lhs, rhs, 0, 0, steps);
}

namespace {

struct ShotResult {
    double closest_distance = std::numeric_limits<double>::infinity();
    double lateral = 0.0;       // signed miss at closest approach
    double arc_at_closest = 0.0;
    bool reached = false;
};

ShotResult shoot_once(const ParametricSurface& surface, Vec2 a, const Vec3& dir, double length,
                      int steps, const Vec3& target) {
    ParamCurve trial;
    double L = length;
    for (int attempt = 0;; ++attempt) {
        try {
            trial = integrate_geodesic(surface, a, dir, L, steps);
            break;
        } catch (const LeftDomain&) {
            if (attempt >= 8) throw;
            L *= 0.5;
        }
    }
    ShotResult out;
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    std::vector<Vec3> pos(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        const Vec2 q = trial.at(double(k) / steps);
        pos[k] = surface.chart(q.x(), q.y());
        const double d2 = (pos[k] - target).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = k;
        }
    }
    double t_star = double(best) / steps;
    if (best > 0 && best < steps) {
        const double d0 = (pos[best - 1] - target).squaredNorm();
        const double d1 = best_d2;
        const double d2 = (pos[best + 1] - target).squaredNorm();
        const double denom = d0 - 2 * d1 + d2;
        if (denom > 0) t_star += 0.5 * (d0 - d2) / denom / steps;
    }
    t_star = std::clamp(t_star, 0.0, 1.0);

    const Vec2 q = trial.at(t_star);
    const Vec2 dq = trial.velocity(t_star);
    const ChartData d = eval_chart(surface, q.x(), q.y());
    const Vec3 tangent = (dq.x() * d.ru + dq.y() * d.rv).normalized();
    const Vec3 to_target = target - d.position;
    out.closest_distance = to_target.norm();
    out.lateral = to_target.dot(d.normal.cross(tangent));
    out.arc_at_closest = t_star * L;
    out.reached = true;
    return out;
}

}  // namespace

GeodesicEdge connect_geodesic(const ParametricSurface& surface, Vec2 a, Vec2 b, int steps) {
    const ChartData da = eval_chart(surface, a.x(), a.y());
    const Vec3 target = surface.chart(b.x(), b.y());
    const Vec3 e1 = da.ru.normalized();
    const Vec3 e2 = da.normal.cross(e1);

    const Vec2 delta = b - a;
    const Vec3 chord = delta.x() * da.ru + delta.y() * da.rv;
    if (chord.norm() < 1e-14)
        throw GeodesicShootingFailed("connect_geodesic: coincident endpoints");
    const double alpha0 = std::atan2(chord.dot(e2), chord.dot(e1));
    const double metric_len = std::sqrt(delta.dot(da.g * delta));
    const double budget = 2.0 * metric_len + 1e-12;

    auto dir_of = [&](double alpha) { return Vec3(std::cos(alpha) * e1 + std::sin(alpha) * e2); };
    auto miss = [&](double alpha) {
        return shoot_once(surface, a, dir_of(alpha), budget, steps, target);
    };

    // bracket a sign change of the lateral offset around the chord direction
    double lo = alpha0, hi = alpha0;
    ShotResult m_lo = miss(lo), m_hi = m_lo;
    bool bracketed = false;
    for (int k = 1; k <= 40 && !bracketed; ++k) {
        const double span = 0.08 * k;
        lo = alpha0 - span;
        hi = alpha0 + span;
        m_lo = miss(lo);
        m_hi = miss(hi);
        bracketed = (m_lo.lateral < 0) != (m_hi.lateral < 0);
    }
    if (!bracketed)
        throw GeodesicShootingFailed("connect_geodesic: could not bracket the launch angle");

    ShotResult best = m_lo.closest_distance < m_hi.closest_distance ? m_lo : m_hi;
    double alpha_best = best.closest_distance == m_lo.closest_distance ? lo : hi;
    for (int it = 0; it < 200 && best.closest_distance > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        const ShotResult m = miss(mid);
        if (m.closest_distance < best.closest_distance) {
            best = m;
            alpha_best = mid;
        }
        if ((m.lateral < 0) == (m_lo.lateral < 0)) {
            lo = mid;
            m_lo = m;
        } else {
            hi = mid;
            m_hi = m;
        }
        if (hi - lo < 1e-16) break;
    }
    if (best.closest_distance > 1e-8)
        throw GeodesicShootingFailed("connect_geodesic: terminal miss " +
                                     std::to_string(best.closest_distance));

    GeodesicEdge edge;
    edge.length = best.arc_at_closest;
    edge.start_dir = dir_of(alpha_best);
    edge.curve = integrate_geodesic(surface, a, edge.start_dir, edge.length, steps);
    {
        const Vec2 q = edge.curve.at(1.0);
        const Vec2 dq = edge.curve.velocity(1.0);
        const ChartData d = eval_chart(surface, q.x(), q.y());
        edge.end_dir = (dq.x() * d.ru + dq.y() * d.rv).normalized();
    }
    edge.track.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) edge.track.push_back(edge.curve.at(double(k) / steps));
    return edge;
}

VerificationReport geodesic_triangle_excess(const ParametricSurface& surface,
                                            const std::array<Vec2, 3>& vertices, int steps,
                                            int resolution) {
    const GeodesicEdge ab = connect_geodesic(surface, vertices[0], vertices[1], steps);
    const GeodesicEdge bc = connect_geodesic(surface, vertices[1], vertices[2], steps);
    const GeodesicEdge ca = connect_geodesic(surface, vertices[2], vertices[0], steps);

    auto angle_between = [](const Vec3& x, const Vec3& y) {
        return std::atan2(x.cross(y).norm(), x.dot(y));
    };
    const double at_a = angle_between(ab.start_dir, -ca.end_dir);
    const double at_b = angle_between(bc.start_dir, -ab.end_dir);
    const double at_c = angle_between(ca.start_dir, -bc.end_dir);
    const double lhs = at_a + at_b + at_c - kPi;

    std::vector<Vec2> boundary;
    boundary.reserve(ab.track.size() + bc.track.size() + ca.track.size());
    auto append = [&](const std::vector<Vec2>& track) {
        for (size_t i = 0; i + 1 < track.size(); ++i) boundary.push_back(track[i]);
    };
    append(ab.track);
    append(bc.track);
    append(ca.track);

    const ParamRegion region = polygon_region(std::move(boundary), resolution, resolution);
    const double rhs = integrate_curvature(surface, region);
    return make_report(Identity::TriangleExcess, lhs, rhs, region.n_u, region.n_v, steps);
}

VerificationReport total_curvature(const ParametricSurface& surface, int n_u, int n_v) {
    if (!surface.euler_char)
        throw NotClosedSurface("total_curvature: '" + surface.name() +
                               "' is not a closed catalog surface");
    const Domain& dom = surface.domain();
    if (n_u <= 0) n_u = dom.u_periodic ? 1024 : 4096;
    if (n_v <= 0) n_v = dom.v_periodic ? 1024 : 4096;
    ParamRegion region = rect_region(dom.u_min, dom.v_min, dom.u_max, dom.v_max, n_u, n_v);
    const double lhs = integrate_curvature(surface, region);
    const double rhs = kTau * double(*surface.euler_char);
    return make_report(Identity::TotalCurvature, lhs, rhs, n_u, n_v, 0);
}

double foucault_rotation(double latitude_degrees) {
    if (!(latitude_degrees >= -90.0 && latitude_degrees <= 90.0))
        throw OutOfRange("foucault_rotation: latitude must lie in [-90, 90]");
    return 360.0 * std::sin(latitude_degrees * kPi / 180.0);
}

}  // namespace gblab
