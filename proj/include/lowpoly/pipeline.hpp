#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowpoly/environment.hpp"
#include "lowpoly/heightfield.hpp"
#include "lowpoly/mesh_io.hpp"
#include "lowpoly/sampling.hpp"
#include "lowpoly/shading.hpp"
#include "lowpoly/terracing.hpp"
#include "lowpoly/triangulation.hpp"

namespace lowpoly::pipeline {

/// Stage names, in execution order. Used for timings, errors and bench columns.
inline constexpr std::array<const char*, 7> kStageNames = {
    "Generating Points",   "Expanding to Square Shape", "Triangulating Points", "Generating Heightmap",
    "Forming Terraces",    "Colouring Triangles",       "Adding Environment",
};

enum class StreamId : std::uint64_t { Sampling = 0, Noise = 1, Jitter = 2, Environment = 3 };

std::uint64_t derive_seed(std::uint64_t master, StreamId stream);

struct OutputConfig {
    std::vector<std::string> formats{"ply", "obj"};
    std::string directory = "out";
};

struct GenerationConfig {
    std::uint64_t master_seed = 1;
    sampling::SampleConfig sample;
    sampling::ExpansionConfig expansion{3, 4.0, 1.5, 4.0};
    heightfield::NoiseParams noise;
    heightfield::FalloffParams falloff;
    heightfield::BiomeTable biomes{{0.0, 0.3, 0.45, 0.7, 1.0}};
    shading::BiomeGradient gradients{{
        {{0.05, 0.20, 0.45}, {0.20, 0.55, 0.80}},
        {{0.85, 0.78, 0.50}, {0.95, 0.88, 0.62}},
        {{0.25, 0.55, 0.20}, {0.45, 0.72, 0.30}},
        {{0.50, 0.50, 0.52}, {0.92, 0.92, 0.95}},
    }};
    terracing::TerraceParams terrace;
    /// Unset means 0.15 * terrace_height.
    std::optional<double> jitter_magnitude;
    std::vector<environment::ObjectSpec> environment{
        {"tree", {0.0, 1.0, {2}}, 0.35, 2, 0.4},
        {"rock", {0.0, 1.0, {3}}, 0.15, 1, 0.2},
    };
    /// false = smooth terrain: Y = noise * height_scale, no terraces or walls.
    bool terraced = true;
    double height_scale = 20.0;
    OutputConfig outputs;

    double resolved_jitter() const { return jitter_magnitude.value_or(0.15 * terrace.terrace_height); }
};

/// Throws ConfigError naming the first violated constraint.
void validate(const GenerationConfig& config);

GenerationConfig config_from_json(const nlohmann::json& doc);
GenerationConfig load_config(const std::filesystem::path& path);
/// Resolved configuration, including the derived per-stage seeds.
nlohmann::ordered_json config_to_json(const GenerationConfig& config);

/// Everything produced along the way; `scene` is what gets exported.
struct GenerationResult {
    triangulation::TriangleMesh2D mesh2d;
    triangulation::AdjacencyGraph graph;
    /// Noise after normalization and falloff.
    std::vector<double> noise;
    /// Biome straight from the noise bands, before span repair.
    std::vector<int> band;
    /// Final biome per vertex.
    std::vector<int> biome;
    /// Noise used for colouring and placement.
    std::vector<double> surface_noise;
    /// Rest height per vertex (terrace level or smooth elevation).
    std::vector<double> ground_y;
    std::vector<terracing::WallRecord> walls;
    int repair_sweeps = 0;
    std::size_t saddles_lowered = 0;
    /// Coloured mesh before jitter.
    TerrainMesh unjittered;
    io::SceneOutput scene;
};

GenerationResult generate(const GenerationConfig& config);

/// Flat-shaded mesh with per-vertex heights and no terracing.
TerrainMesh build_smooth_mesh(const triangulation::TriangleMesh2D& mesh, std::span<const double> elevation,
                              std::span<const double> noise, const heightfield::BiomeTable& table);

/// Writes the requested formats plus manifest.json into the output directory.
std::vector<std::filesystem::path> write_outputs(const io::SceneOutput& scene, const OutputConfig& outputs,
                                                 const io::ManifestOptions& manifest_options);

/// Debug dump of a point set: one "x,z,kind" row per point.
std::string points_csv(const sampling::PointSet& points);

struct BenchRow {
    std::size_t target = 0;
    std::size_t vertex_count = 0;
    double total_ms = 0.0;
    std::array<double, kStageNames.size()> stage_ms{};
};

struct BenchReport {
    std::vector<BenchRow> rows;
    int repetitions = 0;
    std::string hardware_note;
    /// Peak resident set of the process, when the platform reports it.
    std::optional<long> peak_rss_kb;

    std::string table() const;
    nlohmann::ordered_json to_json() const;
};

/// Approximate vertex density of Bridson sampling with 30 attempts, in points
/// per (area / radius^2). Measured on this implementation.
inline constexpr double kPoissonDensity = 0.62;

/// Base config adjusted to produce roughly `target` vertices, expansion rings
/// included. Ring gap and spacing are set to twice the sample radius.
GenerationConfig config_for_vertex_count(const GenerationConfig& base, std::size_t target);

/// Runs the full pipeline `reps` (at least 3) times per size, ascending, and
/// averages.
BenchReport bench(const GenerationConfig& base, std::vector<std::size_t> sizes, int reps);

}  // namespace lowpoly::pipeline
