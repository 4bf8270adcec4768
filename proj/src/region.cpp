#include "gblab/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace gblab {

ParamRegion rect_region(double u0, double v0, double u1, double v1, int n_u, int n_v) {
    ParamRegion r;
    r.u0 = u0;
    r.u1 = u1;
    r.v0 = v0;
    r.v1 = v1;
    r.n_u = n_u;
    r.n_v = n_v;
    return r;
}

int winding_number(const std::vector<Vec2>& polygon, double u, double v) {
    int winding = 0;
    const size_t n = polygon.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[(i + 1) % n];
        if (a.y() <= v && b.y() > v) {
            const double cross = (b.x() - a.x()) * (v - a.y()) - (u - a.x()) * (b.y() - a.y());
            if (cross > 0) ++winding;
        } else if (b.y() <= v && a.y() > v) {
            const double cross = (b.x() - a.x()) * (v - a.y()) - (u - a.x()) * (b.y() - a.y());
            if (cross < 0) --winding;
        }
    }
    return winding;
}

namespace {

struct RowCache {
    std::vector<Vec2> polygon;
    double row = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<double, int>> crossings;  // (u*, +-1), sorted by u*

    void rebuild(double v) {
        crossings.clear();
        const size_t n = polygon.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2& a = polygon[i];
            const Vec2& b = polygon[(i + 1) % n];
            if (a.y() <= v && b.y() > v) {
                const double u = a.x() + (v - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
                crossings.emplace_back(u, +1);
            } else if (b.y() <= v && a.y() > v) {
                const double u = a.x() + (v - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
                crossings.emplace_back(u, -1);
            }
        }
        std::sort(crossings.begin(), crossings.end());
        row = v;
    }

    bool inside(double u, double v) {
        if (v != row) rebuild(v);
        // winding = signed crossings of the ray to +infinity
        int w = 0;
        auto it = std::upper_bound(crossings.begin(), crossings.end(),
                                   std::make_pair(u, std::numeric_limits<int>::max()));
        for (; it != crossings.end(); ++it) w += it->second;
        return w != 0;
    }
};

}  // namespace

ParamRegion polygon_region(std::vector<Vec2> boundary, int n_u, int n_v) {
    if (boundary.size() < 3) throw std::invalid_argument("polygon_region: need >= 3 points");
    ParamRegion r;
    r.u0 = r.u1 = boundary.front().x();
    r.v0 = r.v1 = boundary.front().y();
    for (const Vec2& p : boundary) {
        r.u0 = std::min(r.u0, p.x());
        r.u1 = std::max(r.u1, p.x());
        r.v0 = std::min(r.v0, p.y());
        r.v1 = std::max(r.v1, p.y());
    }
    r.n_u = n_u;
    r.n_v = n_v;
    auto cache = std::make_shared<RowCache>();
    cache->polygon = std::move(boundary);
    r.indicator = [cache](double u, double v) { return cache->inside(u, v); };
    return r;
}

}  // namespace gblab
