#include "gblab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gblab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;
}  // namespace

Vec2 ParamCurve::velocity(double t) const {
    if (derivative) return derivative(t);
    const double h = 1e-6;
    const double lo = std::max(0.0, t - h);
    const double hi = std::min(1.0, t + h);
    return (path(hi) - path(lo)) / (hi - lo);
}

ParamCurve latitude_loop(double phi) {
    ParamCurve c;
    c.path = [phi](double t) { return Vec2(kTau * t, phi); };
    c.derivative = [](double) { return Vec2(kTau, 0.0); };
    c.closed = true;
    return c;
}

ParamCurve tube_loop(double psi) {
    ParamCurve c;
    c.path = [psi](double t) { return Vec2(kTau * t, psi); };
    c.derivative = [](double) { return Vec2(kTau, 0.0); };
    c.closed = true;
    return c;
}

ParamCurve meridian_loop(double theta) {
    ParamCurve c;
    c.path = [theta](double t) { return Vec2(theta, -kPi + kTau * t); };
    c.derivative = [](double) { return Vec2(0.0, kTau); };
    c.closed = true;
    return c;
}

ParamCurve circle_loop(double radius, Vec2 center) {
    ParamCurve c;
    c.path = [radius, center](double t) {
        return Vec2(center.x() + radius * std::cos(kTau * t),
                    center.y() + radius * std::sin(kTau * t));
    };
    c.derivative = [radius](double t) {
        return Vec2(-radius * kTau * std::sin(kTau * t), radius * kTau * std::cos(kTau * t));
    };
    c.closed = true;
    return c;
}

ParamCurve polyline_loop(std::vector<Vec2> points) {
    if (points.size() < 3) throw std::invalid_argument("polyline loop needs >= 3 points");
    const size_t n = points.size();
    ParamCurve c;
    c.closed = true;
    for (size_t i = 1; i < n; ++i) c.corner_times.push_back(double(i) / double(n));
    c.path = [points, n](double t) -> Vec2 {
        double s = (t - std::floor(t)) * double(n);
        size_t i = std::min(size_t(s), n - 1);
        const double f = s - double(i);
        const Vec2& a = points[i];
        const Vec2& b = points[(i + 1) % n];
        return a + f * (b - a);
    };
    c.derivative = [points, n](double t) -> Vec2 {
        double s = (t - std::floor(t)) * double(n);
        size_t i = std::min(size_t(s), n - 1);
        const Vec2& a = points[i];
        const Vec2& b = points[(i + 1) % n];
        return double(n) * (b - a);
    };
    return c;
}

ParamCurve rect_loop(double u0, double v0, double u1, double v1) {
    return polyline_loop({Vec2(u0, v0), Vec2(u1, v0), Vec2(u1, v1), Vec2(u0, v1)});
}

ParamCurve reversed(const ParamCurve& curve) {
    ParamCurve c;
    c.closed = curve.closed;
    c.path = [p = curve.path](double t) { return p(1.0 - t); };
    if (curve.derivative) {
        c.derivative = [d = curve.derivative](double t) { return Vec2(-d(1.0 - t)); };
    }
    for (auto it = curve.corner_times.rbegin(); it != curve.corner_times.rend(); ++it)
        c.corner_times.push_back(1.0 - *it);
    return c;
}

ParamCurve sampled_curve(std::vector<Vec2> nodes, std::vector<Vec2> tangents, bool closed) {
    if (nodes.size() < 2 || nodes.size() != tangents.size())
        throw std::invalid_argument("sampled_curve: need matching nodes and tangents");
    const size_t segments = nodes.size() - 1;
    auto data = std::make_shared<std::pair<std::vector<Vec2>, std::vector<Vec2>>>(
        std::move(nodes), std::move(tangents));
    ParamCurve c;
    c.closed = closed;
    c.path = [data, segments](double t) -> Vec2 {
        t = std::clamp(t, 0.0, 1.0);
        double s = t * double(segments);
        size_t i = std::min(size_t(s), segments - 1);
        const double x = s - double(i);
        const double h = 1.0 / double(segments);
        const Vec2 &p0 = data->first[i], &p1 = data->first[i + 1];
        const Vec2 m0 = data->second[i] * h, m1 = data->second[i + 1] * h;
        const double x2 = x * x, x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * p0 + (x3 - 2 * x2 + x) * m0 +
               (-2 * x3 + 3 * x2) * p1 + (x3 - x2) * m1;
    };
    c.derivative = [data, segments](double t) -> Vec2 {
        t = std::clamp(t, 0.0, 1.0);
        double s = t * double(segments);
        size_t i = std::min(size_t(s), segments - 1);
        const double x = s - double(i);
        const double h = 1.0 / double(segments);
        const Vec2 &p0 = data->first[i], &p1 = data->first[i + 1];
        const Vec2 m0 = data->second[i] * h, m1 = data->second[i + 1] * h;
        const double x2 = x * x;
        const Vec2 d = (6 * x2 - 6 * x) * p0 + (3 * x2 - 4 * x + 1) * m0 +
                       (-6 * x2 + 6 * x) * p1 + (3 * x2 - 2 * x) * m1;
        return d / h;
    };
    return c;
}

}  // namespace gblab
