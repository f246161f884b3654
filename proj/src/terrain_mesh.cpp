#include "lowpoly/terrain_mesh.hpp"

#include <algorithm>

namespace lowpoly {

std::size_t TerrainMesh::wall_count() const {
    return static_cast<std::size_t>(std::count(face_is_wall.begin(), face_is_wall.end(), std::uint8_t{1}));
}

Vec3 TerrainMesh::face_normal(std::size_t face) const {
    const Vec3 a = vertex(face, 0);
    return cross(vertex(face, 1) - a, vertex(face, 2) - a);
}

void TerrainMesh::add_face(const Vec3& a, const Vec3& b, const Vec3& c, std::uint32_t sa, std::uint32_t sb,
                           std::uint32_t sc, bool wall, int level, std::uint32_t source) {
    positions.insert(positions.end(), {a, b, c});
    colors.insert(colors.end(), 3, Rgb{});
    source_vertex.insert(source_vertex.end(), {sa, sb, sc});
    face_is_wall.push_back(wall ? 1 : 0);
    face_level.push_back(level);
    face_source.push_back(source);
}

}  // namespace lowpoly
