#pragma once

#include <array>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert {

// Conforming triangulation: CCW vertex-index triples, per-vertex boundary
// flags, no zero-area triangles, every vertex strictly interior to the
// ambient body.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<char> boundary;
};

// Delaunay-refined triangulation of the region with max edge <= h and min
// angle >= 20 degrees; boundary vertices flagged. The work happens in the
// frame that whitens the region's area covariance (rotation pinned by the
// first boundary point), so corresponding regions under an affine map — with
// h scaled by mesh_length_scale — triangulate to corresponding meshes and
// projective invariants survive discretization.
// Throws std::invalid_argument when h cannot resolve the region.
Mesh triangulate(const ConvexBody& body, const Region& region, double h);

// Largest stretch factor of the whitened frame back to world coordinates: a
// canonical-frame edge of length L maps to a world edge of length at most
// scale * L. An affine image of the region has its own scale; meshing the
// image with h' = h * scale' / scale reproduces the image of the mesh.
double mesh_length_scale(const std::vector<Vec2>& region_boundary);

// Midpoint 4-split: every triangle becomes four; midpoints of boundary edges
// are flagged as boundary. PL functions on the input mesh are reproduced
// exactly on the output.
Mesh refine_mesh(const Mesh& mesh);

// Restriction to the triangles whose three vertices satisfy keep_vertex.
// vertex_map sends old vertex indices to new ones (-1 if dropped). Boundary
// flags are recomputed from the restricted connectivity (edges with a single
// incident triangle) combined with inherited flags.
struct MeshRestriction {
    Mesh mesh;
    std::vector<int> vertex_map;
};
MeshRestriction restrict_mesh(const Mesh& mesh, const std::vector<char>& keep_vertex);

// Structured polar mesh around `center`: one vertex ring per metric radius in
// `radii` (increasing, positive), n_dirs vertices each, joined by triangle
// strips and an inner fan. Elements follow the metric anisotropy, so radial
// test functions stay resolved near the boundary where Euclidean-uniform
// meshes cannot. Only the outermost ring is flagged as boundary.
Mesh ring_mesh(const ConvexBody& body, Vec2 center, const std::vector<double>& radii,
               int n_dirs);

double mesh_max_edge(const Mesh& mesh);
double mesh_min_angle(const Mesh& mesh);  // degrees

}  // namespace hilbert
