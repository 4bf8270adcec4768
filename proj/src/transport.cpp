#include "gblab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gblab {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double wrap_pi(double a) {
    a = std::fmod(a + std::numbers::pi, kTau);
    if (a < 0) a += kTau;
    return a - std::numbers::pi;
}

struct CurveFrame {
    Vec3 normal;
    Vec3 n_dot;    // dN/dt along the curve
    Vec3 e1, e2;   // chart frame: r_u normalized, N x e1
    Vec3 velocity; // 3-space curve velocity
};

CurveFrame curve_frame(const ParametricSurface& surface, const ParamCurve& curve, double t,
                       double t_deriv) {
    const Vec2 p = curve.at(t);
    const Vec2 d = curve.velocity(t_deriv);
    const ChartData cd = eval_chart(surface, p.x(), p.y());
    Vec3 nu, nv;
    normal_derivatives(cd, nu, nv);
    CurveFrame f;
    f.normal = cd.normal;
    f.n_dot = d.x() * nu + d.y() * nv;
    f.e1 = cd.ru.normalized();
    f.e2 = cd.normal.cross(f.e1);
    f.velocity = d.x() * cd.ru + d.y() * cd.rv;
    return f;
}

// Step boundaries aligned with the curve's corners, close to `steps` total.
std::vector<double> step_nodes(const ParamCurve& curve, int steps) {
    std::vector<double> knots{0.0};
    for (double c : curve.corner_times)
        if (c > 0.0 && c < 1.0) knots.push_back(c);
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    std::vector<double> nodes{0.0};
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        const double span = knots[i + 1] - knots[i];
        const int n = std::max(2, int(std::lround(steps * span)));
        for (int k = 1; k <= n; ++k) nodes.push_back(knots[i] + span * k / n);
    }
    nodes.back() = 1.0;
    return nodes;
}

}  // namespace

TransportResult parallel_transport(const ParametricSurface& surface, const ParamCurve& curve,
                                   Vec3 w0, int steps) {
    if (steps < 8) throw std::invalid_argument("parallel_transport: steps must be >= 8");
    const double w0_norm = w0.norm();
    if (w0_norm <= 0.0) throw NotTangent("parallel_transport: zero start vector");

    const auto nodes = step_nodes(curve, steps);

    CurveFrame f0 = curve_frame(surface, curve, 0.0, 0.0);
    if (std::abs(w0.dot(f0.normal)) > 1e-8 * w0_norm)
        throw NotTangent("parallel_transport: start vector is not tangent");

    const double vel_scale = f0.velocity.norm();
    Vec3 w = w0 - w0.dot(f0.normal) * f0.normal;
    w *= w0_norm / w.norm();

    TransportResult out;
    out.samples.reserve(nodes.size());
    out.samples.emplace_back(0.0, w);

    double angle_acc = 0.0;
    double azimuth_acc = 0.0;
    double drift_factor = 1.0;
    double max_drift = 0.0;

    double prev_angle = std::atan2(w.dot(f0.e2), w.dot(f0.e1));
    double prev_azimuth = std::atan2(f0.e1.y(), f0.e1.x());
    bool have_azimuth = f0.e1.head<2>().squaredNorm() > 1e-24;

    // derivative evaluations stay strictly inside the smooth segment
    auto rhs = [&](double t, double lo, double hi, const Vec3& wk) {
        const double td = std::clamp(t, lo + 1e-13, hi - 1e-13);
        const CurveFrame f = curve_frame(surface, curve, t, td);
        return Vec3(-(wk.dot(f.n_dot)) * f.normal);
    };

    size_t corner_idx = 0;
    std::vector<double> segment_edges{0.0};
    for (double c : curve.corner_times) segment_edges.push_back(c);
    segment_edges.push_back(1.0);

    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double t0 = nodes[i], t1 = nodes[i + 1];
        while (corner_idx + 2 < segment_edges.size() && t0 >= segment_edges[corner_idx + 1])
            ++corner_idx;
        const double lo = segment_edges[corner_idx];
        const double hi = segment_edges[corner_idx + 1];

        const double h = t1 - t0;
        const Vec3 k1 = rhs(t0, lo, hi, w);
        const Vec3 k2 = rhs(t0 + h / 2, lo, hi, w + (h / 2) * k1);
        const Vec3 k3 = rhs(t0 + h / 2, lo, hi, w + (h / 2) * k2);
        const Vec3 k4 = rhs(t1, lo, hi, w + h * k3);
        w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const CurveFrame f = curve_frame(surface, curve, t1, std::min(t1, hi - 1e-13));
        if (f.velocity.norm() < 1e-12 * std::max(1.0, vel_scale))
            throw CurveNotRegular("parallel_transport: vanishing curve velocity");

        drift_factor *= w.norm() / w0_norm;
        max_drift = std::max(max_drift, std::abs(w0_norm * drift_factor - w0_norm));

        w -= w.dot(f.normal) * f.normal;
        w *= w0_norm / w.norm();

        const double angle = std::atan2(w.dot(f.e2), w.dot(f.e1));
        angle_acc += wrap_pi(angle - prev_angle);
        prev_angle = angle;

        if (f.e1.head<2>().squaredNorm() > 1e-24) {
            const double az = std::atan2(f.e1.y(), f.e1.x());
            if (have_azimuth) azimuth_acc += wrap_pi(az - prev_azimuth);
            prev_azimuth = az;
            have_azimuth = true;
        }

        out.samples.emplace_back(t1, w);
    }

    out.norm_drift = max_drift;
    out.deficit_angle = angle_acc;
    if (curve.closed) {
        const long winding = std::lround(azimuth_acc / kTau);
        out.deficit_angle = angle_acc + kTau * double(winding);
    }
    return out;
}

double deficit_angle(const ParametricSurface& surface, const ParamCurve& curve, int steps) {
    if (!curve.closed) throw NotClosed("deficit_angle: curve is not marked closed");
    const Vec2 a = curve.at(0.0), b = curve.at(1.0);
    const Vec3 pa = surface.chart(a.x(), a.y());
    const Vec3 pb = surface.chart(b.x(), b.y());
    const double scale = std::max(1.0, pa.norm());
    if ((pa - pb).norm() > 1e-9 * scale)
        throw NotClosed("deficit_angle: endpoints map to different points");
    const ChartData cd = eval_chart(surface, a.x(), a.y());
    return parallel_transport(surface, curve, cd.ru.normalized(), steps).deficit_angle;
}

ParamCurve integrate_geodesic(const ParametricSurface& surface, Vec2 start, Vec3 direction,
                              double arc_length, int steps) {
    if (arc_length <= 0) throw std::invalid_argument("integrate_geodesic: arc_length > 0");
    if (steps < 8) throw std::invalid_argument("integrate_geodesic: steps must be >= 8");

    const Domain& dom = surface.domain();
    const double slack_u = 1e-6 * dom.u_extent();
    const double slack_v = 1e-6 * dom.v_extent();

    ChartData cd = eval_chart(surface, start.x(), start.y());
    if (std::abs(direction.dot(cd.normal)) > 1e-8 * direction.norm())
        throw NotTangent("integrate_geodesic: direction is not tangent");

    auto chart_velocity = [](const ChartData& d, const Vec3& vel3) {
        Vec2 rhs(vel3.dot(d.ru), vel3.dot(d.rv));
        const double det = d.g(0, 0) * d.g(1, 1) - d.g(0, 1) * d.g(1, 0);
        return Vec2((d.g(1, 1) * rhs.x() - d.g(0, 1) * rhs.y()) / det,
                    (d.g(0, 0) * rhs.y() - d.g(1, 0) * rhs.x()) / det);
    };

    Vec2 q = start;
    Vec2 dq = chart_velocity(cd, direction);
    {
        const double speed = (dq.x() * cd.ru + dq.y() * cd.rv).norm();
        dq /= speed;  // unit 3-space speed; parameter = arc length
    }

    // y = (u, v, du/ds, dv/ds); acceleration solved from a_T = 0.
    auto accel = [&](const Vec2& pos, const Vec2& vel) -> Vec2 {
        const Vec2 pc = dom.clamped(pos.x(), pos.y());
        const ChartData d = eval_chart(surface, pc.x(), pc.y());
        const Vec3 s = d.ruu * (vel.x() * vel.x()) + 2.0 * d.ruv * (vel.x() * vel.y()) +
                       d.rvv * (vel.y() * vel.y());
        const Vec2 rhs(-s.dot(d.ru), -s.dot(d.rv));
        const double det = d.g(0, 0) * d.g(1, 1) - d.g(0, 1) * d.g(1, 0);
        return Vec2((d.g(1, 1) * rhs.x() - d.g(0, 1) * rhs.y()) / det,
                    (d.g(0, 0) * rhs.y() - d.g(1, 0) * rhs.x()) / det);
    };

    std::vector<Vec2> nodes{q};
    std::vector<Vec2> tangents{dq * arc_length};  // per-unit-t derivative

    const double h = arc_length / steps;
    for (int k = 0; k < steps; ++k) {
        const Vec2 k1p = dq, k1v = accel(q, dq);
        const Vec2 k2p = dq + (h / 2) * k1v, k2v = accel(q + (h / 2) * k1p, dq + (h / 2) * k1v);
        const Vec2 k3p = dq + (h / 2) * k2v, k3v = accel(q + (h / 2) * k2p, dq + (h / 2) * k2v);
        const Vec2 k4p = dq + h * k3v, k4v = accel(q + h * k3p, dq + h * k3v);
        q += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dq += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        if (!dom.contains(q.x(), q.y(), std::max(slack_u, slack_v)))
            throw LeftDomain(surface.name() + ": geodesic left the chart at (u,v)=(" +
                             std::to_string(q.x()) + ", " + std::to_string(q.y()) + ")");

        const Vec2 pc = dom.clamped(q.x(), q.y());
        const ChartData d = eval_chart(surface, pc.x(), pc.y());
        const double speed = (dq.x() * d.ru + dq.y() * d.rv).norm();
        dq /= speed;

        nodes.push_back(q);
        tangents.push_back(dq * arc_length);
    }

    const Vec3 p_first = surface.chart(nodes.front().x(), nodes.front().y());
    const Vec3 p_last = surface.chart(nodes.back().x(), nodes.back().y());
    const bool closes = (p_first - p_last).norm() < 1e-9 * std::max(1.0, p_first.norm());
    return sampled_curve(std::move(nodes), std::move(tangents), closes);
}

Vec3 tangential_acceleration(const ParametricSurface& surface, const ParamCurve& curve,
                             double t) {
    const Vec2 p = curve.at(t);
    const ChartData cd = eval_chart(surface, p.x(), p.y());

    auto velocity3 = [&](double s) {
        const Vec2 q = curve.at(s);
        const Vec2 d = curve.velocity(s);
        const ChartData c = eval_chart(surface, q.x(), q.y());
        return Vec3(d.x() * c.ru + d.y() * c.rv);
    };

    const double h = 1e-6;
    const double lo = std::max(0.0, t - h);
    const double hi = std::min(1.0, t + h);
    const Vec3 a = (velocity3(hi) - velocity3(lo)) / (hi - lo);
    return a - a.dot(cd.normal) * cd.normal;
}

double rotation_rate(const ParametricSurface& surface, const ParamCurve& curve, double t) {
    const Vec2 p = curve.at(t);
    const Vec2 d = curve.velocity(t);
    const ChartData cd = eval_chart(surface, p.x(), p.y());
    const Vec3 v = d.x() * cd.ru + d.y() * cd.rv;
    const double speed = v.norm();
    if (speed < 1e-14) throw CurveNotRegular("rotation_rate: vanishing velocity");
    return tangential_acceleration(surface, curve, t).norm() / speed;
}

}  // namespace gblab
