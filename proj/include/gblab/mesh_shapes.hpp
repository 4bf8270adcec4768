#pragma once

#include <string>

#include "gblab/mesh.hpp"

namespace gblab {

TriMesh tetrahedron();
TriMesh cube_triangulated();
TriMesh icosahedron();

/// Splits each face in four and reprojects new vertices to the unit sphere.
TriMesh subdivide_icosphere(const TriMesh& mesh);
TriMesh icosphere(int level);

/// n x m vertex grid over the standard torus chart, closed and outward.
TriMesh torus_grid(double ring_radius, double tube_radius, int n, int m);

/// Two torus grids glued along a removed triangle pair; chi = -2.
TriMesh genus_two();

/// A small open grid patch, for boundary diagnostics.
TriMesh open_strip();

/// OBJ text for a quad-faced cube, exercising fan triangulation.
std::string cube_quads_obj_text();

}  // namespace gblab
