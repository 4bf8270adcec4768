#pragma once

#include <functional>
#include <vector>

#include "gblab/surface.hpp"

namespace gblab {

/// Quadrature region: a parameter rectangle, optionally clipped by an
/// indicator predicate, with a per-axis midpoint resolution.
struct ParamRegion {
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
    std::function<bool(double, double)> indicator;  // null: whole rectangle
    int n_u = 1024;
    int n_v = 1024;
};

ParamRegion rect_region(double u0, double v0, double u1, double v1, int n_u = 1024,
                        int n_v = 1024);

/// Region enclosed by a closed parameter-space polygon (nonzero winding).
/// The rectangle is the polygon's bounding box; the membership test caches
/// edge crossings per grid row, so row-major sweeps stay O(rows * edges).
ParamRegion polygon_region(std::vector<Vec2> boundary, int n_u = 1024, int n_v = 1024);

/// Signed winding number of `polygon` around (u, v).
int winding_number(const std::vector<Vec2>& polygon, double u, double v);

}  // namespace gblab
