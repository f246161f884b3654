#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowpoly/environment.hpp"
#include "lowpoly/terrain_mesh.hpp"

namespace lowpoly::io {

struct StageStat {
    std::string stage;
    double duration_ms = 0.0;
    std::size_t count = 0;
};

struct SceneOutput {
    TerrainMesh mesh;
    std::vector<environment::Placement> placements;
    std::vector<StageStat> stats;
    /// Fully resolved configuration, including derived seeds.
    nlohmann::ordered_json config;
};

/// 0..1 -> 0..255 with rounding; out-of-range input is clamped.
unsigned char quantize(double c);

/// Shortest decimal text that reads back to the same 32-bit float.
std::string format_float(float v);

/// ASCII PLY: float x y z, uchar red green blue per vertex; one 3-index list per face.
std::string ply_string(const SceneOutput& scene);
void export_ply(const SceneOutput& scene, const std::filesystem::path& path);

/// Wavefront OBJ with placeholder `vt 0 0` records and 1-based `f a b c` faces.
/// OBJ has no colour channel, so colours are dropped.
std::string obj_string(const SceneOutput& scene);
void export_obj(const SceneOutput& scene, const std::filesystem::path& path);

struct ManifestOptions {
    /// Wall-clock durations make the file differ between runs; leave them out
    /// when byte-identical manifests are wanted.
    bool include_timings = true;
};

nlohmann::ordered_json manifest_json(const SceneOutput& scene, const ManifestOptions& options = {});
std::string manifest_string(const SceneOutput& scene, const ManifestOptions& options = {});
void write_manifest(const SceneOutput& scene, const std::filesystem::path& path, const ManifestOptions& options = {});

}  // namespace lowpoly::io
