#include "lowpoly/terracing.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace lowpoly::terracing {

void validate(const TerraceParams& params) {
    if (!(params.terrace_height > 0.0)) throw ConfigError("terrace_height must be positive");
}

std::vector<int> repair_spans(const triangulation::TriangleMesh2D& mesh, std::span<const int> biomes,
                              int band_count, int* changing_sweeps) {
    std::vector<int> level(biomes.begin(), biomes.end());
    int changed_sweeps = 0;
    // One extra sweep beyond band_count only ever confirms the fixed point.
    for (int sweep = 0; sweep <= band_count; ++sweep) {
        bool changed = false;
        for (const auto& t : mesh.triangles) {
            const int lo = std::min({level[t[0]], level[t[1]], level[t[2]]});
            const int hi = std::max({level[t[0]], level[t[1]], level[t[2]]});
            if (hi - lo <= 1) continue;
            for (std::uint32_t v : t) {
                if (level[v] > lo + 1) {
                    level[v] = lo + 1;
                    changed = true;
                }
            }
        }
        if (!changed) break;
        ++changed_sweeps;
    }
    if (changing_sweeps != nullptr) *changing_sweeps = changed_sweeps;
    return level;
}

double elevate(int biome, const TerraceParams& params) { return biome * params.terrace_height; }

Rising classify(const triangulation::Triangle& tri, std::span<const int> biomes) {
    const int l0 = biomes[tri[0]];
    const int l1 = biomes[tri[1]];
    const int l2 = biomes[tri[2]];
    const int lo = std::min({l0, l1, l2});
    const int hi = std::max({l0, l1, l2});
    if (hi - lo > 1) throw std::logic_error("triangle spans more than two levels; spans were not repaired");

    Rising r;
    r.lower_level = lo;
    if (hi == lo) return r;

    const int upper_count = (l0 == hi) + (l1 == hi) + (l2 == hi);
    const int levels[3] = {l0, l1, l2};
    if (upper_count == 1) {
        r.kind = RisingClass::SingleUpper;
        for (int k = 0; k < 3; ++k) {
            if (levels[k] == hi) r.leading = k;
        }
    } else {
        r.kind = RisingClass::DoubleUpper;
        for (int k = 0; k < 3; ++k) {
            if (levels[k] == lo) r.leading = k;
        }
    }
    return r;
}

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
}

}  // namespace

std::vector<WallRecord> mark_invalid_walls(const triangulation::TriangleMesh2D& mesh,
                                           std::span<const int> biomes) {
    std::vector<WallRecord> records;
    std::unordered_map<std::uint64_t, std::size_t> by_edge;
    for (std::uint32_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const Rising r = classify(t, biomes);
        if (r.kind != RisingClass::DoubleUpper) continue;
        const std::uint32_t a = t[(r.leading + 1) % 3];
        const std::uint32_t b = t[(r.leading + 2) % 3];
        WallRecord rec{{std::min(a, b), std::max(a, b)}, ti, true};
        const auto [it, inserted] = by_edge.emplace(edge_key(a, b), records.size());
        if (!inserted) {
            records[it->second].valid = false;
            rec.valid = false;
        }
        records.push_back(rec);
    }
    return records;
}

std::size_t resolve_saddles(const triangulation::TriangleMesh2D& mesh, std::vector<int>& biomes, int band_count) {
    const auto hull = triangulation::hull_vertices(mesh);
    std::vector<std::uint8_t> on_hull(biomes.size(), 0);
    for (std::uint32_t v : hull) on_hull[v] = 1;

    std::size_t lowered = 0;
    std::vector<int> walls_at(biomes.size());
    for (;;) {
        std::fill(walls_at.begin(), walls_at.end(), 0);
        for (const WallRecord& w : mark_invalid_walls(mesh, biomes)) {
            if (!w.valid) continue;
            ++walls_at[w.edge.first];
            ++walls_at[w.edge.second];
        }
        bool changed = false;
        for (std::uint32_t v = 0; v < biomes.size(); ++v) {
            if (walls_at[v] > 2 && on_hull[v] == 0) {
                --biomes[v];
                ++lowered;
                changed = true;
            }
        }
        if (!changed) return lowered;
        biomes = repair_spans(mesh, biomes, band_count);
    }
}

TerrainMesh build_terraced_mesh(const triangulation::TriangleMesh2D& mesh, std::span<const int> biomes,
                                const TerraceParams& params, std::span<const WallRecord> walls) {
    std::unordered_map<std::uint32_t, const WallRecord*> wall_of;
    for (const WallRecord& w : walls) wall_of.emplace(w.owner, &w);

    const auto& pts = mesh.points.points;
    auto at = [&](std::uint32_t v, double y) { return Vec3{pts[v].x, y, pts[v].z}; };

    TerrainMesh out;
    out.positions.reserve(3 * mesh.triangles.size() + 3 * walls.size() * 2);
    for (std::uint32_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const Rising r = classify(t, biomes);
        const double y = elevate(r.lower_level, params);

        // 2D winding is CCW in (x, z); swapping two corners turns the normal to +Y
        out.add_face(at(t[0], y), at(t[2], y), at(t[1], y), t[0], t[2], t[1], false, r.lower_level, ti);

        if (r.kind != RisingClass::DoubleUpper) continue;
        const auto it = wall_of.find(ti);
        if (it == wall_of.end() || !it->second->valid) continue;

        const std::uint32_t first = it->second->edge.first;
        const std::uint32_t second = it->second->edge.second;
        const double y_hi = elevate(r.lower_level + 1, params);
        const Vec3 a = at(first, y);
        const Vec3 b = at(second, y);
        const Vec3 c = at(second, y_hi);
        const Vec3 d = at(first, y_hi);

        const Vec2 lead = pts[t[r.leading]];
        const Vec3 towards_lead{lead.x - a.x, 0.0, lead.z - a.z};
        if (dot(cross(b - a, c - a), towards_lead) > 0.0) {
            out.add_face(a, b, c, first, second, second, true, r.lower_level, ti);
            out.add_face(a, c, d, first, second, first, true, r.lower_level, ti);
        } else {
            out.add_face(a, c, b, first, second, second, true, r.lower_level, ti);
            out.add_face(a, d, c, first, first, second, true, r.lower_level, ti);
        }
    }
    return out;
}

double recalc_noise(std::uint32_t vertex, const triangulation::AdjacencyGraph& graph,
                    const heightfield::BiomeTable& table, std::span<const int> biomes,
                    std::span<const double> noise) {
    const auto& nbrs = graph.neighbors[vertex];
    double mean = noise[vertex];
    if (!nbrs.empty()) {
        double sum = 0.0;
        for (std::uint32_t n : nbrs) sum += noise[n];
        mean = sum / static_cast<double>(nbrs.size());
    }
    const auto band = static_cast<std::size_t>(biomes[vertex]);
    const double lo = table.lower(band);
    // the last band is closed at 1
    const double hi = band + 1 == table.band_count() ? table.upper(band) : table.upper(band) - kBandEpsilon;
    return std::clamp(mean, lo, std::max(lo, hi));
}

std::vector<double> recalc_all(const triangulation::AdjacencyGraph& graph, const heightfield::BiomeTable& table,
                               std::span<const int> biomes, std::span<const double> noise) {
    std::vector<double> out(noise.size());
    for (std::uint32_t v = 0; v < out.size(); ++v) out[v] = recalc_noise(v, graph, table, biomes, noise);
    return out;
}

}  // namespace lowpoly::terracing
