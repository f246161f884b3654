#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lowpoly/common.hpp"

namespace lowpoly::heightfield {

struct NoiseParams {
    std::uint64_t seed = 0;
    /// World units per noise unit.
    double scale = 30.0;
    int octaves = 4;
    double lacunarity = 2.0;
    double persistence = 0.5;
    Vec2 offset;
};

void validate(const NoiseParams& params);

struct FalloffParams {
    /// Distance from the region edge over which values ramp down to `ground`.
    double boundary = 20.0;
    double ground = 0.0;
};

void validate(const FalloffParams& params);

/// Ascending band boundaries 0 = b_0 < b_1 < ... < b_m = 1.
struct BiomeTable {
    std::vector<double> bounds{0.0, 1.0};

    std::size_t band_count() const { return bounds.size() - 1; }
    double lower(std::size_t band) const { return bounds[band]; }
    double upper(std::size_t band) const { return bounds[band + 1]; }
};

void validate(const BiomeTable& table);

struct HeightAssignment {
    std::vector<double> noise;
    std::vector<int> biome;
    std::vector<double> elevation;
};

/// Classic 2D gradient noise with a seed-shuffled 256-entry permutation and
/// quintic fade, remapped from [-1, 1] to [0, 1]. Lattice points map to 0.5.
class GradientNoise {
  public:
    explicit GradientNoise(std::uint64_t seed);

    double operator()(double x, double y) const;

  private:
    std::array<std::uint8_t, 512> perm_{};
};

/// One-off evaluation; builds the permutation on every call.
double perlin2(double x, double y, std::uint64_t seed);

/// Sum over octaves i of persistence^i * noise(lacunarity^i * (p + offset) / scale).
double layered_noise(Vec2 p, const NoiseParams& params, const GradientNoise& noise);
double layered_noise(Vec2 p, const NoiseParams& params);

/// Affine map of the observed [min, max] onto [0, 1]. Constant input maps to 0.5.
std::vector<double> normalize(std::span<const double> values);

/// Distance from p to the nearest edge of [0,width] x [0,height]; negative outside.
double edge_distance(Vec2 p, double width, double height);

/// Linear ramp from `ground` at the region edge to `v` at distance `boundary`.
/// Points outside the region get `ground`.
double apply_falloff(Vec2 p, double v, double width, double height, const FalloffParams& params);

/// Index i with v in [b_i, b_{i+1}); v = 1 lands in the last band.
int assign_biome(double v, const BiomeTable& table);

}  // namespace lowpoly::heightfield
