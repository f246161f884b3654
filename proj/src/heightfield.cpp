#include "lowpoly/heightfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lowpoly/random.hpp"

namespace lowpoly::heightfield {

void validate(const NoiseParams& params) {
    if (!(params.scale > 0.0)) throw ConfigError("noise scale must be positive");
    if (params.octaves < 1) throw ConfigError("noise octaves must be at least 1");
    if (!(params.lacunarity > 1.0)) throw ConfigError("noise lacunarity must be > 1");
    if (!(params.persistence > 0.0 && params.persistence <= 1.0)) {
        throw ConfigError("noise persistence must be in (0, 1]");
    }
}

void validate(const FalloffParams& params) {
    if (!(params.boundary > 0.0)) throw ConfigError("falloff boundary must be positive");
    if (!(params.ground >= 0.0 && params.ground <= 1.0)) throw ConfigError("falloff ground must be in [0, 1]");
}

void validate(const BiomeTable& table) {
    const auto& b = table.bounds;
    if (b.size() < 2) throw ConfigError("biome table needs at least one band");
    if (b.front() != 0.0 || b.back() != 1.0) throw ConfigError("biome bounds must start at 0 and end at 1");
    for (std::size_t i = 1; i < b.size(); ++i) {
        if (!(b[i] > b[i - 1])) throw ConfigError("biome bounds must be strictly ascending");
    }
}

namespace {

constexpr double kDiag = 0.7071067811865476;

constexpr std::array<Vec2, 8> kGradients = {{
    {1.0, 0.0},
    {-1.0, 0.0},
    {0.0, 1.0},
    {0.0, -1.0},
    {kDiag, kDiag},
    {-kDiag, kDiag},
    {kDiag, -kDiag},
    {-kDiag, -kDiag},
}};

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double blend(double a, double b, double t) { return a + t * (b - a); }

double corner(std::uint8_t hash, double dx, double dy) {
    const Vec2 g = kGradients[hash & 7];
    return g.x * dx + g.z * dy;
}

}  // namespace

GradientNoise::GradientNoise(std::uint64_t seed) {
    std::array<std::uint8_t, 256> p{};
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    Rng rng(seed);
    for (std::size_t i = p.size() - 1; i > 0; --i) {
        std::swap(p[i], p[rng.below(i + 1)]);
    }
    for (std::size_t i = 0; i < perm_.size(); ++i) perm_[i] = p[i & 255];
}

double GradientNoise::operator()(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double dx = x - fx;
    const double dy = y - fy;
    const auto xi = static_cast<std::size_t>(static_cast<long long>(fx) & 255);
    const auto yi = static_cast<std::size_t>(static_cast<long long>(fy) & 255);

    const std::uint8_t h00 = perm_[perm_[xi] + yi];
    const std::uint8_t h10 = perm_[perm_[xi + 1] + yi];
    const std::uint8_t h01 = perm_[perm_[xi] + yi + 1];
    const std::uint8_t h11 = perm_[perm_[xi + 1] + yi + 1];

    const double u = fade(dx);
    const double v = fade(dy);
    const double bottom = blend(corner(h00, dx, dy), corner(h10, dx - 1.0, dy), u);
    const double top = blend(corner(h01, dx, dy - 1.0), corner(h11, dx - 1.0, dy - 1.0), u);
    return 0.5 * (blend(bottom, top, v) + 1.0);
}

double perlin2(double x, double y, std::uint64_t seed) { return GradientNoise(seed)(x, y); }

double layered_noise(Vec2 p, const NoiseParams& params, const GradientNoise& noise) {
    const double sx = (p.x + params.offset.x) / params.scale;
    const double sz = (p.z + params.offset.z) / params.scale;
    double sum = 0.0;
    double amplitude = 1.0;
    double frequency = 1.0;
    for (int i = 0; i < params.octaves; ++i) {
        sum += amplitude * noise(frequency * sx, frequency * sz);
        amplitude *= params.persistence;
        frequency *= params.lacunarity;
    }
    return sum;
}

double layered_noise(Vec2 p, const NoiseParams& params) {
    return layered_noise(p, params, GradientNoise(params.seed));
}

std::vector<double> normalize(std::span<const double> values) {
    if (values.empty()) return {};
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> out(values.size(), 0.5);
    if (hi == lo) return out;
    const double span = hi - lo;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / span;
    return out;
}

double edge_distance(Vec2 p, double width, double height) {
    return std::min({p.x, width - p.x, p.z, height - p.z});
}

double apply_falloff(Vec2 p, double v, double width, double height, const FalloffParams& params) {
    const double d = edge_distance(p, width, height);
    if (d >= params.boundary) return v;
    if (d < 0.0) return params.ground;
    return params.ground + (v - params.ground) * (d / params.boundary);
}

int assign_biome(double v, const BiomeTable& table) {
    const auto it = std::upper_bound(table.bounds.begin(), table.bounds.end(), v);
    const auto band = static_cast<int>(it - table.bounds.begin()) - 1;
    return std::clamp(band, 0, static_cast<int>(table.band_count()) - 1);
}

}  // namespace lowpoly::heightfield
