#include "lowpoly/environment.hpp"

#include <algorithm>
#include <numbers>

#include "lowpoly/random.hpp"

namespace lowpoly::environment {

void validate(const ObjectSpec& spec) {
    const auto& e = spec.eligibility;
    if (!e.by_biome() && !(e.noise_lo < e.noise_hi)) {
        throw ConfigError("object '" + spec.name + "': noise interval needs lo < hi");
    }
    if (!(spec.probability >= 0.0 && spec.probability <= 1.0)) {
        throw ConfigError("object '" + spec.name + "': probability must be in [0, 1]");
    }
    if (spec.footprint < 1) throw ConfigError("object '" + spec.name + "': footprint must be >= 1");
    if (!(spec.max_offset >= 0.0)) throw ConfigError("object '" + spec.name + "': max_offset must be >= 0");
}

bool on_biome_edge(std::uint32_t vertex, const TerrainView& terrain) {
    const int b = terrain.biomes[vertex];
    const auto& nbrs = terrain.graph->neighbors[vertex];
    return std::any_of(nbrs.begin(), nbrs.end(), [&](std::uint32_t n) { return terrain.biomes[n] != b; });
}

bool matches(const ObjectSpec& spec, int biome, double noise) {
    const auto& e = spec.eligibility;
    if (e.by_biome()) return std::find(e.biomes.begin(), e.biomes.end(), biome) != e.biomes.end();
    return noise >= e.noise_lo && noise < e.noise_hi;
}

bool eligible(std::uint32_t vertex, const ObjectSpec& spec, const TerrainView& terrain,
              std::span<const std::uint8_t> occupied) {
    return occupied[vertex] == 0 && !on_biome_edge(vertex, terrain) &&
           matches(spec, terrain.biomes[vertex], terrain.noise[vertex]);
}

void mark_footprint(std::uint32_t anchor, int depth, const triangulation::AdjacencyGraph& graph,
                    std::vector<std::uint8_t>& occupied) {
    std::vector<std::uint32_t> frontier{anchor};
    std::vector<std::uint32_t> next;
    std::vector<std::uint32_t> seen{anchor};
    occupied[anchor] = 1;
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        next.clear();
        for (std::uint32_t v : frontier) {
            for (std::uint32_t n : graph.neighbors[v]) {
                if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
                seen.push_back(n);
                occupied[n] = 1;
                next.push_back(n);
            }
        }
        std::swap(frontier, next);
    }
}

std::vector<Placement> place_objects(const TerrainView& terrain, std::span<const ObjectSpec> specs,
                                     std::uint64_t seed) {
    for (const ObjectSpec& s : specs) validate(s);
    std::vector<Placement> out;
    if (specs.empty()) return out;

    const auto& pts = terrain.mesh->points.points;
    const auto n = static_cast<std::uint32_t>(pts.size());
    std::vector<std::uint8_t> occupied(n, 0);
    Rng rng(seed);

    for (std::uint32_t v = 0; v < n; ++v) {
        if (occupied[v] != 0 || on_biome_edge(v, terrain)) continue;
        for (const ObjectSpec& spec : specs) {
            if (!matches(spec, terrain.biomes[v], terrain.noise[v])) continue;
            if (!rng.bernoulli(spec.probability)) continue;

            // uniform in the disc by rejection
            Vec2 dither;
            if (spec.max_offset > 0.0) {
                do {
                    dither = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                } while (length_sq(dither) > 1.0);
                dither = spec.max_offset * dither;
            }
            const double yaw = 2.0 * std::numbers::pi * rng.uniform01();
            out.push_back({spec.name, v, {pts[v].x + dither.x, terrain.ground_y[v], pts[v].z + dither.z}, yaw});
            mark_footprint(v, spec.footprint, *terrain.graph, occupied);
            break;
        }
    }
    return out;
}

}  // namespace lowpoly::environment
