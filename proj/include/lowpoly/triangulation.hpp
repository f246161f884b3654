#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowpoly/common.hpp"
#include "lowpoly/sampling.hpp"

namespace lowpoly::triangulation {

using Triangle = std::array<std::uint32_t, 3>;

/// Indexed triangles over a point set. Winding is counter-clockwise in the
/// (x, z) plane, i.e. cross(b - a, c - a) > 0.
struct TriangleMesh2D {
    sampling::PointSet points;
    std::vector<Triangle> triangles;
};

struct Circumcircle {
    Vec2 center;
    double radius_sq = 0.0;

    bool contains(Vec2 p) const { return distance_sq(center, p) < radius_sq; }
};

/// Throws DegeneracyError when a, b, c are collinear (relative area below 1e-12).
Circumcircle circumcircle(Vec2 a, Vec2 b, Vec2 c);

/// Bootstrap triangle enclosing the input. `vertices` is counter-clockwise;
/// `directions` are the unit vectors from `center` to each vertex.
struct SuperTriangle {
    std::array<Vec2, 3> vertices;
    std::array<Vec2, 3> directions;
    Vec2 center;
};

/// Equilateral super-triangle around the bounding box. Every input point lies
/// inside with clearance of at least 10x the bounding-box diagonal; the
/// triangle scales linearly with the box.
SuperTriangle super_triangle(const sampling::PointSet& points);

/// Robustness-relevant sign of the in-circle determinant for CCW (a, b, c):
/// positive when d is inside, with magnitudes under `relative_tolerance` times
/// the determinant's permanent reported as 0.
int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double relative_tolerance = 1e-12);

/// Bowyer-Watson incremental Delaunay triangulation.
///
/// Points are inserted in PointSet order. The super-triangle vertices are
/// treated as points at infinity along `super_triangle(points).directions`,
/// which is the limit of an arbitrarily large bootstrap triangle; this keeps
/// every convex hull edge in the result. Points exactly on a circumcircle do
/// not invalidate the existing triangle, so cocircular ties keep the older
/// triangles.
///
/// Throws TriangulationError for fewer than 3 points, all points collinear,
/// or duplicate points.
TriangleMesh2D bowyer_watson(const sampling::PointSet& points);

/// Per-vertex sorted neighbour lists derived from triangle edges.
struct AdjacencyGraph {
    std::vector<std::vector<std::uint32_t>> neighbors;

    std::size_t vertex_count() const { return neighbors.size(); }
    std::size_t edge_count() const;
    bool adjacent(std::uint32_t a, std::uint32_t b) const;
};

AdjacencyGraph build_adjacency(const TriangleMesh2D& mesh);

/// Vertices on the convex hull boundary (edges used by a single triangle), sorted.
std::vector<std::uint32_t> hull_vertices(const TriangleMesh2D& mesh);

}  // namespace lowpoly::triangulation
