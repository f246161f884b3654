#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lowpoly/common.hpp"
#include "lowpoly/triangulation.hpp"

namespace lowpoly::environment {

/// What an object type may spawn on: a half-open noise interval [lo, hi), or
/// a set of biome indices when `biomes` is non-empty.
struct Eligibility {
    double noise_lo = 0.0;
    double noise_hi = 1.0;
    std::vector<int> biomes;

    bool by_biome() const { return !biomes.empty(); }
};

struct ObjectSpec {
    std::string name;
    Eligibility eligibility;
    /// Chance that an eligible vertex receives this object.
    double probability = 0.0;
    /// Graph-distance exclusion radius marked around a placed object.
    int footprint = 1;
    /// Radius of the random XZ displacement from the anchor vertex.
    double max_offset = 0.0;
};

void validate(const ObjectSpec& spec);

struct Placement {
    std::string name;
    std::uint32_t anchor = 0;
    Vec3 position;
    /// Radians in [0, 2pi).
    double yaw = 0.0;
};

/// Per-vertex data the placer reads. All spans are indexed by 2D vertex.
struct TerrainView {
    const triangulation::TriangleMesh2D* mesh = nullptr;
    const triangulation::AdjacencyGraph* graph = nullptr;
    std::span<const int> biomes;
    std::span<const double> noise;
    /// Height objects rest at (the terrace level, before jitter).
    std::span<const double> ground_y;
};

/// True when some neighbour lies in a different biome.
bool on_biome_edge(std::uint32_t vertex, const TerrainView& terrain);

bool matches(const ObjectSpec& spec, int biome, double noise);

/// Vertex can take `spec` now: not on a biome edge, matches the spec's
/// eligibility, and not occupied.
bool eligible(std::uint32_t vertex, const ObjectSpec& spec, const TerrainView& terrain,
              std::span<const std::uint8_t> occupied);

/// Marks every vertex within graph distance `depth` of `anchor` (breadth-first,
/// anchor included).
void mark_footprint(std::uint32_t anchor, int depth, const triangulation::AdjacencyGraph& graph,
                    std::vector<std::uint8_t>& occupied);

/// Visits vertices in ascending index. At each free, non-edge vertex the specs
/// are tried in order; each matching spec gets one Bernoulli draw and the first
/// success places the object and marks its footprint.
std::vector<Placement> place_objects(const TerrainView& terrain, std::span<const ObjectSpec> specs,
                                     std::uint64_t seed);

}  // namespace lowpoly::environment
