#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lowpoly/heightfield.hpp"
#include "lowpoly/terrain_mesh.hpp"

namespace lowpoly::shading {

struct Gradient {
    Rgb low;
    Rgb high;
};

struct BiomeGradient {
    /// One gradient per biome band.
    std::vector<Gradient> bands;
    Rgb wall_color{0.45, 0.36, 0.28};
};

void validate(const BiomeGradient& gradients, const heightfield::BiomeTable& table);

struct JitterParams {
    /// Largest |dY| applied to a vertex.
    double magnitude = 0.3;
    std::uint64_t seed = 0;
};

void validate(const JitterParams& params);

/// |n . up| < 1e-6 for a unit normal. Throws DegeneracyError for a zero normal.
bool is_wall(const Vec3& unit_normal);

/// Colour of a terrace face: lerp of the band's gradient by where the mean
/// vertex noise sits inside the band, clamped to the band ends.
Rgb triangle_color(const std::array<double, 3>& vertex_noise, int band, const heightfield::BiomeTable& table,
                   const BiomeGradient& gradients);

/// Assigns a colour to every face. Faces detected by is_wall get the wall
/// colour; others use triangle_color with the face level as band and the
/// noise of the source vertices. `band_of_face`, when non-empty, overrides the
/// band per face.
void color_mesh(TerrainMesh& mesh, std::span<const double> noise, const heightfield::BiomeTable& table,
                const BiomeGradient& gradients, std::span<const int> band_of_face = {});

/// Moves every vertex by a random dY in [-magnitude, magnitude]. Vertices with
/// bit-identical positions receive the same offset, so duplicated corners stay
/// together. Colours, X and Z are untouched.
TerrainMesh jitter(const TerrainMesh& mesh, const JitterParams& params);

}  // namespace lowpoly::shading
