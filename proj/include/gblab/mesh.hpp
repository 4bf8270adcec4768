#pragma once

#include <Eigen/Dense>
#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gblab/errors.hpp"

namespace gblab {

using Vec3 = Eigen::Vector3d;

/// Indexed triangle mesh; faces are counterclockwise w.r.t. the outward
/// normal. Construction validates indices, repeated-vertex faces and
/// degenerate (zero-area) triangles. Closedness is a separate check so that
/// open meshes can still be loaded and diagnosed.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;

    int vertex_count() const { return int(vertices.size()); }
    int face_count() const { return int(faces.size()); }
    int edge_count() const;

    std::vector<std::vector<int>> vertex_faces() const;  // incident faces per vertex
    double scale() const;                                // bounding-box diagonal
};

enum class MeshFormat { Off, Obj };

/// Parses OFF or the v/f subset of OBJ. Polygonal faces are fan-triangulated
/// from their first vertex, which adds no vertices and so preserves both the
/// Euler characteristic and the per-vertex defects.
TriMesh load_mesh(std::string_view text, MeshFormat format);

/// Loads by file extension (.off / .obj).
TriMesh load_mesh_file(const std::string& path);

struct ManifoldReport {
    bool closed = false;
    bool oriented = false;
    std::vector<std::pair<int, int>> boundary_edges;     // seen by exactly one face
    std::vector<std::pair<int, int>> nonmanifold_edges;  // seen by three or more
};

ManifoldReport validate_closed(const TriMesh& mesh);

/// V - E + F in exact integer arithmetic.
int euler_characteristic(const TriMesh& mesh);

/// 2*pi minus the incident interior angles at the vertex. Angles use
/// atan2(|cross|, dot); negative values mark saddle vertices.
double angle_defect(const TriMesh& mesh, int vertex);

struct DefectReport {
    std::vector<double> defects;  // per vertex, radians
    double total = 0.0;
    int vertex_count = 0, edge_count = 0, face_count = 0;
    int chi = 0;
    double residual = 0.0;  // |total - 2*pi*chi|
};

/// Per-vertex defects summed in vertex order with compensation.
DefectReport total_defect(const TriMesh& mesh);

nlohmann::ordered_json to_json(const DefectReport& report);
void write_defect_csv(std::ostream& out, const DefectReport& report);

struct ConvergenceRow {
    int level = 0;
    int vertex_count = 0;
    int face_count = 0;
    double defect_sum = 0.0;
    double sum_abs_error = 0.0;          // |defect_sum - 4*pi|
    double max_ratio_deviation = 0.0;    // defect/(K * area share) vs 1, valence-6 vertices
};

/// Icosphere refinement ladder on the unit sphere: the defect sum stays 4*pi
/// at every level while per-vertex defects approach K times the local area
/// share (one third of the incident triangle areas).
std::vector<ConvergenceRow> sphere_mesh_convergence(int refinements);

}  // namespace gblab
