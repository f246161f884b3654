#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowpoly/common.hpp"

namespace lowpoly {

/// Flat-shaded 3D terrain. Face f owns vertices 3f, 3f+1, 3f+2; nothing is
/// shared between faces. Front faces wind counter-clockwise in a right-handed
/// Y-up frame, so terrace tops face +Y.
struct TerrainMesh {
    std::vector<Vec3> positions;
    std::vector<Rgb> colors;
    /// Index of the 2D sample point each vertex was emitted from.
    std::vector<std::uint32_t> source_vertex;

    std::vector<std::uint8_t> face_is_wall;
    /// Terrace level of the face. For walls, the lower of the two levels.
    std::vector<int> face_level;
    /// 2D triangle the face was derived from.
    std::vector<std::uint32_t> face_source;

    std::size_t face_count() const { return face_is_wall.size(); }
    std::size_t wall_count() const;

    Vec3 vertex(std::size_t face, int corner) const { return positions[3 * face + static_cast<std::size_t>(corner)]; }

    /// Unnormalized (b - a) x (c - a).
    Vec3 face_normal(std::size_t face) const;

    void add_face(const Vec3& a, const Vec3& b, const Vec3& c, std::uint32_t sa, std::uint32_t sb,
                  std::uint32_t sc, bool wall, int level, std::uint32_t source);
};

}  // namespace lowpoly
