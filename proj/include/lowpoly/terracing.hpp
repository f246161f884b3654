#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lowpoly/heightfield.hpp"
#include "lowpoly/terrain_mesh.hpp"
#include "lowpoly/triangulation.hpp"

namespace lowpoly::terracing {

struct TerraceParams {
    /// World units between consecutive biome levels.
    double terrace_height = 2.0;
    /// Run resolve_saddles after span repair.
    bool resolve_saddles = true;
};

void validate(const TerraceParams& params);

/// Lowers vertices until every triangle spans at most two adjacent levels.
///
/// Each sweep visits triangles in order; when a triangle spans more than one
/// level, its vertices above the lowest are set to lowest + 1. Levels never
/// increase, and the fixed point is reached in at most `band_count` sweeps.
/// `changing_sweeps`, when given, receives the number of sweeps that changed
/// something.
std::vector<int> repair_spans(const triangulation::TriangleMesh2D& mesh, std::span<const int> biomes,
                              int band_count, int* changing_sweeps = nullptr);

double elevate(int biome, const TerraceParams& params);

enum class RisingClass { Flat, SingleUpper, DoubleUpper };

struct Rising {
    RisingClass kind = RisingClass::Flat;
    /// Corner (0..2) of the vertex alone on its level; -1 for Flat.
    int leading = -1;
    /// Level the triangle is flattened to.
    int lower_level = 0;
};

/// Throws std::logic_error if the triangle spans more than one level, which
/// means repair_spans was skipped or is broken.
Rising classify(const triangulation::Triangle& tri, std::span<const int> biomes);

struct WallRecord {
    /// Upper edge of the owning DoubleUpper triangle, smaller index first.
    std::pair<std::uint32_t, std::uint32_t> edge;
    std::uint32_t owner = 0;
    bool valid = true;
};

/// One record per DoubleUpper triangle, in triangle order. When two such
/// triangles share their upper edge, both records are invalid.
std::vector<WallRecord> mark_invalid_walls(const triangulation::TriangleMesh2D& mesh, std::span<const int> biomes);

/// Lowers each interior vertex where more than two valid walls meet by one
/// level, then repairs spans again, until no such vertex is left.
///
/// Two upper terraces touching only at a vertex put four wall faces on the
/// same vertical edge there. Lowering the vertex separates the terraces so
/// every edge of the result is shared by exactly two faces. Returns the
/// number of times a vertex was lowered.
std::size_t resolve_saddles(const triangulation::TriangleMesh2D& mesh, std::vector<int>& biomes, int band_count);

/// Flattens every triangle to its lowest level and adds the wall quad for
/// each valid DoubleUpper triangle.
///
/// The quad between the upper edge (u, w), u < w, at levels i and i+1 is split
/// along u@i -> w@i+1 and wound so its normal points towards the triangle's
/// leading vertex, away from the higher terrace.
TerrainMesh build_terraced_mesh(const triangulation::TriangleMesh2D& mesh, std::span<const int> biomes,
                                const TerraceParams& params, std::span<const WallRecord> walls);

/// Width of the gap kept below a band's open upper bound.
inline constexpr double kBandEpsilon = 1e-6;

/// Mean of the neighbours' noise, clamped into the vertex's final band.
double recalc_noise(std::uint32_t vertex, const triangulation::AdjacencyGraph& graph,
                    const heightfield::BiomeTable& table, std::span<const int> biomes,
                    std::span<const double> noise);

/// recalc_noise for every vertex, reading only the input values.
std::vector<double> recalc_all(const triangulation::AdjacencyGraph& graph, const heightfield::BiomeTable& table,
                               std::span<const int> biomes, std::span<const double> noise);

}  // namespace lowpoly::terracing
