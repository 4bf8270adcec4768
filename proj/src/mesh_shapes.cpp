#include "gblab/mesh_shapes.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>

namespace gblab {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

TriMesh tetrahedron() {
    TriMesh m;
    const double s = 1.0 / std::sqrt(3.0);
    m.vertices = {Vec3(1, 1, 1) * s, Vec3(1, -1, -1) * s, Vec3(-1, 1, -1) * s,
                  Vec3(-1, -1, 1) * s};
    m.faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
    return m;
}

TriMesh cube_triangulated() {
    TriMesh m;
    for (int i = 0; i < 8; ++i)
        m.vertices.emplace_back(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1);
    const int quads[6][4] = {
        {0, 2, 3, 1},  // z = -1
        {4, 5, 7, 6},  // z = +1
        {0, 1, 5, 4},  // y = -1
        {2, 6, 7, 3},  // y = +1
        {0, 4, 6, 2},  // x = -1
        {1, 3, 7, 5},  // x = +1
    };
    for (const auto& q : quads) {
        m.faces.push_back({q[0], q[1], q[2]});
        m.faces.push_back({q[0], q[2], q[3]});
    }
    return m;
}

TriMesh icosahedron() {
    TriMesh m;
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    const Vec3 raw[12] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                          {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                          {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (const Vec3& p : raw) m.vertices.push_back(p.normalized());
    m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return m;
}

TriMesh subdivide_icosphere(const TriMesh& mesh) {
    TriMesh out;
    out.vertices = mesh.vertices;
    std::map<int64_t, int> midpoint;
    auto mid = [&](int a, int b) {
        const int64_t key = (int64_t(std::min(a, b)) << 32) | uint32_t(std::max(a, b));
        if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
        out.vertices.push_back((out.vertices[a] + out.vertices[b]).normalized());
        midpoint[key] = int(out.vertices.size()) - 1;
        return midpoint[key];
    };
    for (const auto& tri : mesh.faces) {
        const int a = mid(tri[0], tri[1]);
        const int b = mid(tri[1], tri[2]);
        const int c = mid(tri[2], tri[0]);
        out.faces.push_back({tri[0], a, c});
        out.faces.push_back({tri[1], b, a});
        out.faces.push_back({tri[2], c, b});
        out.faces.push_back({a, b, c});
    }
    return out;
}

TriMesh icosphere(int level) {
    TriMesh m = icosahedron();
    for (int i = 0; i < level; ++i) m = subdivide_icosphere(m);
    return m;
}

TriMesh torus_grid(double ring_radius, double tube_radius, int n, int m) {
    TriMesh mesh;
    mesh.vertices.reserve(size_t(n) * m);
    for (int i = 0; i < n; ++i) {
        const double theta = kTau * i / n;
        for (int j = 0; j < m; ++j) {
            const double psi = kTau * j / m;
            const double w = ring_radius + tube_radius * std::cos(psi);
            mesh.vertices.emplace_back(w * std::cos(theta), w * std::sin(theta),
                                       tube_radius * std::sin(psi));
        }
    }
    auto vid = [n, m](int i, int j) { return ((i % n + n) % n) * m + ((j % m + m) % m); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            mesh.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            mesh.faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    return mesh;
}

TriMesh genus_two() {
    TriMesh a = torus_grid(2.0, 1.0, 8, 8);
    TriMesh b = torus_grid(2.0, 1.0, 8, 8);
    for (Vec3& p : b.vertices) p += Vec3(7.0, 0.0, 0.0);

    const auto fa = a.faces.front();
    const auto fb = b.faces.front();
    a.faces.erase(a.faces.begin());
    b.faces.erase(b.faces.begin());

    // identify the freed boundary triangles, reversing order so every glued
    // edge ends up used once in each direction
    std::map<int, int> remap{{fb[0], fa[0]}, {fb[1], fa[2]}, {fb[2], fa[1]}};

    TriMesh out;
    out.vertices = a.vertices;
    std::vector<int> b_index(b.vertex_count(), -1);
    for (int i = 0; i < b.vertex_count(); ++i) {
        if (auto it = remap.find(i); it != remap.end()) {
            b_index[i] = it->second;
        } else {
            out.vertices.push_back(b.vertices[i]);
            b_index[i] = int(out.vertices.size()) - 1;
        }
    }
    out.faces = a.faces;
    for (const auto& tri : b.faces)
        out.faces.push_back({b_index[tri[0]], b_index[tri[1]], b_index[tri[2]]});
    return out;
}

TriMesh open_strip() {
    TriMesh m;
    const int n = 4;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= 1; ++j) m.vertices.emplace_back(i, j, 0.1 * i * j);
    auto vid = [](int i, int j) { return i * 2 + j; };
    for (int i = 0; i < n; ++i) {
        m.faces.push_back({vid(i, 0), vid(i + 1, 0), vid(i + 1, 1)});
        m.faces.push_back({vid(i, 0), vid(i + 1, 1), vid(i, 1)});
    }
    return m;
}

std::string cube_quads_obj_text() {
    return "# unit cube, quad faces\n"
           "v -1 -1 -1\nv 1 -1 -1\nv -1 1 -1\nv 1 1 -1\n"
           "v -1 -1 1\nv 1 -1 1\nv -1 1 1\nv 1 1 1\n"
           "f 1 3 4 2\n"
           "f 5 6 8 7\n"
           "f 1 2 6 5\n"
           "f 3 7 8 4\n"
           "f 1 5 7 3\n"
           "f 2 4 8 6\n";
}

}  // namespace gblab
