#include "gblab/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "gblab/mesh_shapes.hpp"

namespace gblab {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

int64_t edge_key(int a, int b) {
    const int lo = std::min(a, b), hi = std::max(a, b);
    return (int64_t(lo) << 32) | uint32_t(hi);
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

void validate_structure(const TriMesh& mesh) {
    const int nv = mesh.vertex_count();
    const double area_floor = 1e-12 * mesh.scale() * mesh.scale();
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& tri = mesh.faces[f];
        for (int idx : tri) {
            if (idx < 0 || idx >= nv)
                throw IndexOutOfRange("face " + std::to_string(f) + " references vertex " +
                                      std::to_string(idx) + " of " + std::to_string(nv));
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw NonTriangulatable("face " + std::to_string(f) + " repeats a vertex");
        if (triangle_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]) <=
            area_floor)
            throw NonTriangulatable("face " + std::to_string(f) + " is degenerate");
    }
}

// Line-oriented tokenizer that keeps positions for ParseError.
struct LineReader {
    std::string_view text;
    size_t pos = 0;
    int line = 0;

    // next non-empty, non-comment line; returns false at end of input
    bool next(std::string& out, int& line_no) {
        while (pos < text.size()) {
            size_t eol = text.find('\n', pos);
            if (eol == std::string_view::npos) eol = text.size();
            std::string_view raw = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line;
            if (const auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            size_t begin = raw.find_first_not_of(" \t\r");
            if (begin == std::string_view::npos) continue;
            out.assign(raw.substr(begin));
            line_no = line;
            return true;
        }
        return false;
    }
};

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, int line, int col) {
    try {
        size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected a number, got '" + tok + "'");
    }
}

long parse_long(const std::string& tok, int line, int col) {
    try {
        size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected an integer, got '" + tok + "'");
    }
}

void fan_triangulate(TriMesh& mesh, const std::vector<int>& polygon, int line) {
    if (polygon.size() < 3) throw ParseError(line, 1, "face needs at least 3 indices");
    for (size_t k = 1; k + 1 < polygon.size(); ++k)
        mesh.faces.push_back({polygon[0], polygon[int(k)], polygon[int(k) + 1]});
}

TriMesh parse_off(std::string_view text) {
    LineReader reader{text};
    std::string line;
    int line_no = 0;
    if (!reader.next(line, line_no)) throw ParseError(1, 1, "empty OFF file");

    auto tokens = split_ws(line);
    size_t counts_at = 0;
    if (tokens[0] == "OFF" || tokens[0] == "COFF" || tokens[0] == "NOFF") {
        counts_at = 1;
        if (tokens.size() == 1) {
            if (!reader.next(line, line_no)) throw ParseError(line_no, 1, "missing counts line");
            tokens = split_ws(line);
            counts_at = 0;
        }
    } else {
        throw ParseError(line_no, 1, "expected OFF header, got '" + tokens[0] + "'");
    }
    if (tokens.size() < counts_at + 3) throw ParseError(line_no, 1, "expected 'V F E' counts");
    const long nv = parse_long(tokens[counts_at], line_no, 1);
    const long nf = parse_long(tokens[counts_at + 1], line_no, 2);
    if (nv < 0 || nf < 0) throw ParseError(line_no, 1, "negative counts");

    TriMesh mesh;
    mesh.vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        if (!reader.next(line, line_no))
            throw ParseError(reader.line + 1, 1,
                             "truncated file: expected " + std::to_string(nv) + " vertices");
        tokens = split_ws(line);
        if (tokens.size() < 3) throw ParseError(line_no, 1, "vertex needs 3 coordinates");
        mesh.vertices.emplace_back(parse_double(tokens[0], line_no, 1),
                                   parse_double(tokens[1], line_no, 2),
                                   parse_double(tokens[2], line_no, 3));
    }
    for (long f = 0; f < nf; ++f) {
        if (!reader.next(line, line_no))
            throw ParseError(reader.line + 1, 1,
                             "truncated file: expected " + std::to_string(nf) + " faces");
        tokens = split_ws(line);
        const long arity = parse_long(tokens[0], line_no, 1);
        if (arity < 3) throw ParseError(line_no, 1, "face arity must be >= 3");
        if (long(tokens.size()) < arity + 1)
            throw ParseError(line_no, int(tokens.size()), "face lists too few indices");
        std::vector<int> polygon;
        for (long k = 0; k < arity; ++k)
            polygon.push_back(int(parse_long(tokens[k + 1], line_no, int(k) + 2)));
        fan_triangulate(mesh, polygon, line_no);
    }
    return mesh;
}

TriMesh parse_obj(std::string_view text) {
    LineReader reader{text};
    std::string line;
    int line_no = 0;
    TriMesh mesh;
    while (reader.next(line, line_no)) {
        auto tokens = split_ws(line);
        if (tokens[0] == "v") {
            if (tokens.size() < 4) throw ParseError(line_no, 1, "vertex needs 3 coordinates");
            mesh.vertices.emplace_back(parse_double(tokens[1], line_no, 2),
                                       parse_double(tokens[2], line_no, 3),
                                       parse_double(tokens[3], line_no, 4));
        } else if (tokens[0] == "f") {
            if (tokens.size() < 4) throw ParseError(line_no, 1, "face needs >= 3 indices");
            std::vector<int> polygon;
            for (size_t k = 1; k < tokens.size(); ++k) {
                std::string head = tokens[k].substr(0, tokens[k].find('/'));
                const long idx = parse_long(head, line_no, int(k) + 1);
                if (idx <= 0)
                    throw ParseError(line_no, int(k) + 1, "only positive OBJ indices supported");
                polygon.push_back(int(idx) - 1);
            }
            fan_triangulate(mesh, polygon, line_no);
        }
        // the v/f subset ignores every other record type
    }
    return mesh;
}

}  // namespace

int TriMesh::edge_count() const {
    std::map<int64_t, int> seen;
    for (const auto& tri : faces)
        for (int k = 0; k < 3; ++k) ++seen[edge_key(tri[k], tri[(k + 1) % 3])];
    return int(seen.size());
}

std::vector<std::vector<int>> TriMesh::vertex_faces() const {
    std::vector<std::vector<int>> out(vertices.size());
    for (size_t f = 0; f < faces.size(); ++f)
        for (int idx : faces[f]) out[idx].push_back(int(f));
    return out;
}

double TriMesh::scale() const {
    if (vertices.empty()) return 1.0;
    Vec3 lo = vertices.front(), hi = vertices.front();
    for (const Vec3& p : vertices) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double diag = (hi - lo).norm();
    return diag > 0 ? diag : 1.0;
}

TriMesh load_mesh(std::string_view text, MeshFormat format) {
    TriMesh mesh = format == MeshFormat::Off ? parse_off(text) : parse_obj(text);
    validate_structure(mesh);
    return mesh;
}

TriMesh load_mesh_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MeshError("cannot open mesh file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const bool is_obj = path.size() > 4 && path.substr(path.size() - 4) == ".obj";
    return load_mesh(text, is_obj ? MeshFormat::Obj : MeshFormat::Off);
}

ManifoldReport validate_closed(const TriMesh& mesh) {
    std::map<int64_t, int> undirected;
    std::map<std::pair<int, int>, int> directed;
    for (const auto& tri : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k], b = tri[(k + 1) % 3];
            ++undirected[edge_key(a, b)];
            ++directed[{a, b}];
        }
    }
    ManifoldReport report;
    report.closed = true;
    report.oriented = true;
    for (const auto& [key, count] : undirected) {
        const int a = int(key >> 32), b = int(key & 0xffffffff);
        if (count == 1) {
            report.closed = false;
            report.boundary_edges.emplace_back(a, b);
        } else if (count > 2) {
            report.closed = false;
            report.nonmanifold_edges.emplace_back(a, b);
        } else {
            // shared by two faces: orientability needs one use per direction
            if (directed[{a, b}] != 1 || directed[{b, a}] != 1) report.oriented = false;
        }
    }
    return report;
}

int euler_characteristic(const TriMesh& mesh) {
    return mesh.vertex_count() - mesh.edge_count() + mesh.face_count();
}

double angle_defect(const TriMesh& mesh, int vertex) {
    if (vertex < 0 || vertex >= mesh.vertex_count())
        throw IndexOutOfRange("angle_defect: vertex " + std::to_string(vertex));
    const auto incident = mesh.vertex_faces()[vertex];
    if (incident.empty())
        throw IsolatedVertex("angle_defect: vertex " + std::to_string(vertex) +
                             " has no incident faces");

    // the star must be a single closed fan around the vertex
    std::map<int, int> successor;
    for (int f : incident) {
        const auto& tri = mesh.faces[f];
        int a = -1, b = -1;
        for (int k = 0; k < 3; ++k) {
            if (tri[k] == vertex) {
                a = tri[(k + 1) % 3];
                b = tri[(k + 2) % 3];
                break;
            }
        }
        if (successor.count(a))
            throw OpenStar("angle_defect: vertex " + std::to_string(vertex) +
                           " has a non-manifold star");
        successor[a] = b;
    }
    int walk = successor.begin()->first;
    size_t visited = 0;
    do {
        auto it = successor.find(walk);
        if (it == successor.end())
            throw OpenStar("angle_defect: vertex " + std::to_string(vertex) +
                           " has an open star");
        walk = it->second;
        ++visited;
    } while (walk != successor.begin()->first && visited <= successor.size());
    if (visited != successor.size())
        throw OpenStar("angle_defect: vertex " + std::to_string(vertex) +
                       " has a disconnected star");

    double sum = 0.0;
    const Vec3& p = mesh.vertices[vertex];
    for (int f : incident) {
        const auto& tri = mesh.faces[f];
        Vec3 q1, q2;
        for (int k = 0; k < 3; ++k) {
            if (tri[k] == vertex) {
                q1 = mesh.vertices[tri[(k + 1) % 3]];
                q2 = mesh.vertices[tri[(k + 2) % 3]];
                break;
            }
        }
        const Vec3 u = q1 - p, v = q2 - p;
        sum += std::atan2(u.cross(v).norm(), u.dot(v));
    }
    return kTau - sum;
}

DefectReport total_defect(const TriMesh& mesh) {
    const ManifoldReport manifold = validate_closed(mesh);
    if (!manifold.closed)
        throw MeshNotClosed("total_defect: mesh has " +
                            std::to_string(manifold.boundary_edges.size()) +
                            " boundary and " +
                            std::to_string(manifold.nonmanifold_edges.size()) +
                            " non-manifold edges");

    DefectReport report;
    report.vertex_count = mesh.vertex_count();
    report.edge_count = mesh.edge_count();
    report.face_count = mesh.face_count();
    report.chi = euler_characteristic(mesh);
    report.defects.resize(mesh.vertex_count());

    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        report.defects[i] = angle_defect(mesh, i);
        const double y = report.defects[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    report.total = sum;
    report.residual = std::abs(sum - kTau * report.chi);
    return report;
}

nlohmann::ordered_json to_json(const DefectReport& report) {
    nlohmann::ordered_json j;
    j["vertices"] = report.vertex_count;
    j["edges"] = report.edge_count;
    j["faces"] = report.face_count;
    j["chi"] = report.chi;
    j["total_defect"] = report.total;
    j["residual"] = report.residual;
    return j;
}

void write_defect_csv(std::ostream& out, const DefectReport& report) {
    out << "vertex_index,defect_radians\n";
    char buf[64];
    for (size_t i = 0; i < report.defects.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, report.defects[i]);
        out << buf;
    }
}

std::vector<ConvergenceRow> sphere_mesh_convergence(int refinements) {
    std::vector<ConvergenceRow> rows;
    TriMesh mesh = icosahedron();
    for (int level = 0; level <= refinements; ++level) {
        if (level > 0) mesh = subdivide_icosphere(mesh);
        const DefectReport report = total_defect(mesh);

        std::vector<double> area_share(mesh.vertex_count(), 0.0);
        std::vector<int> valence(mesh.vertex_count(), 0);
        for (const auto& tri : mesh.faces) {
            const double area = triangle_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                              mesh.vertices[tri[2]]);
            for (int idx : tri) {
                area_share[idx] += area / 3.0;
                ++valence[idx];
            }
        }
        ConvergenceRow row;
        row.level = level;
        row.vertex_count = mesh.vertex_count();
        row.face_count = mesh.face_count();
        row.defect_sum = report.total;
        row.sum_abs_error = std::abs(report.total - 2.0 * kTau);
        for (int i = 0; i < mesh.vertex_count(); ++i) {
            if (valence[i] != 6) continue;  // the twelve seed vertices converge slower
            row.max_ratio_deviation =
                std::max(row.max_ratio_deviation,
                         std::abs(report.defects[i] / area_share[i] - 1.0));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gblab
