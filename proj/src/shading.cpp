#include "lowpoly/shading.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "lowpoly/random.hpp"

namespace lowpoly::shading {

namespace {

bool in_unit_range(const Rgb& c) {
    auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
    return ok(c.r) && ok(c.g) && ok(c.b);
}

}  // namespace

void validate(const BiomeGradient& gradients, const heightfield::BiomeTable& table) {
    if (gradients.bands.size() != table.band_count()) {
        throw ConfigError("need exactly one colour gradient per biome band");
    }
    for (const Gradient& g : gradients.bands) {
        if (!in_unit_range(g.low) || !in_unit_range(g.high)) throw ConfigError("gradient colours must be in [0, 1]");
    }
    if (!in_unit_range(gradients.wall_color)) throw ConfigError("wall colour must be in [0, 1]");
}

void validate(const JitterParams& params) {
    if (!(params.magnitude >= 0.0)) throw ConfigError("jitter magnitude must be non-negative");
}

bool is_wall(const Vec3& unit_normal) {
    if (!(length(unit_normal) > 0.0)) throw DegeneracyError("zero-length face normal");
    return std::abs(unit_normal.y) < 1e-6;
}

Rgb triangle_color(const std::array<double, 3>& vertex_noise, int band, const heightfield::BiomeTable& table,
                   const BiomeGradient& gradients) {
    const double mean = (vertex_noise[0] + vertex_noise[1] + vertex_noise[2]) / 3.0;
    const auto b = static_cast<std::size_t>(band);
    const double lo = table.lower(b);
    const double t = std::clamp((mean - lo) / (table.upper(b) - lo), 0.0, 1.0);
    return lerp(gradients.bands[b].low, gradients.bands[b].high, t);
}

void color_mesh(TerrainMesh& mesh, std::span<const double> noise, const heightfield::BiomeTable& table,
                const BiomeGradient& gradients, std::span<const int> band_of_face) {
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        const Vec3 n = mesh.face_normal(f);
        const double len = length(n);
        Rgb color;
        if (is_wall((1.0 / len) * n)) {
            color = gradients.wall_color;
        } else {
            const std::array<double, 3> face_noise = {
                noise[mesh.source_vertex[3 * f]],
                noise[mesh.source_vertex[3 * f + 1]],
                noise[mesh.source_vertex[3 * f + 2]],
            };
            const int band = band_of_face.empty() ? mesh.face_level[f] : band_of_face[f];
            color = triangle_color(face_noise, band, table, gradients);
        }
        std::fill_n(mesh.colors.begin() + static_cast<std::ptrdiff_t>(3 * f), 3, color);
    }
}

namespace {

struct PositionKey {
    std::uint64_t x, y, z;
    friend bool operator==(const PositionKey&, const PositionKey&) = default;
};

struct PositionKeyHash {
    std::size_t operator()(const PositionKey& k) const {
        return static_cast<std::size_t>(mix64(k.x ^ mix64(k.y ^ mix64(k.z))));
    }
};

}  // namespace

TerrainMesh jitter(const TerrainMesh& mesh, const JitterParams& params) {
    validate(params);
    TerrainMesh out = mesh;
    if (params.magnitude == 0.0) return out;

    Rng rng(params.seed);
    std::unordered_map<PositionKey, double, PositionKeyHash> offsets;
    offsets.reserve(mesh.positions.size() / 2);
    for (Vec3& p : out.positions) {
        const PositionKey key{std::bit_cast<std::uint64_t>(p.x), std::bit_cast<std::uint64_t>(p.y),
                              std::bit_cast<std::uint64_t>(p.z)};
        auto [it, inserted] = offsets.try_emplace(key, 0.0);
        if (inserted) it->second = rng.uniform(-params.magnitude, params.magnitude);
        p.y += it->second;
    }
    return out;
}

}  // namespace lowpoly::shading
