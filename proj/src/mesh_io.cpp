#include "lowpoly/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace lowpoly::io {

unsigned char quantize(double c) {
    return static_cast<unsigned char>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0));
}

std::string format_float(float v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ExportError("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw ExportError("failed writing " + path.string());
}

void append_xyz(std::string& s, const Vec3& p) {
    s += format_float(static_cast<float>(p.x));
    s += ' ';
    s += format_float(static_cast<float>(p.y));
    s += ' ';
    s += format_float(static_cast<float>(p.z));
}

}  // namespace

std::string ply_string(const SceneOutput& scene) {
    const TerrainMesh& m = scene.mesh;
    std::string s;
    s.reserve(m.positions.size() * 40 + m.face_count() * 24 + 256);
    s += "ply\nformat ascii 1.0\n";
    s += "element vertex " + std::to_string(m.positions.size()) + "\n";
    s += "property float x\nproperty float y\nproperty float z\n";
    s += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    s += "element face " + std::to_string(m.face_count()) + "\n";
    s += "property list uchar int vertex_indices\n";
    s += "end_header\n";
    for (std::size_t i = 0; i < m.positions.size(); ++i) {
        append_xyz(s, m.positions[i]);
        const Rgb& c = m.colors[i];
        s += ' ' + std::to_string(quantize(c.r)) + ' ' + std::to_string(quantize(c.g)) + ' ' +
             std::to_string(quantize(c.b)) + '\n';
    }
    for (std::size_t f = 0; f < m.face_count(); ++f) {
        s += "3 " + std::to_string(3 * f) + ' ' + std::to_string(3 * f + 1) + ' ' + std::to_string(3 * f + 2) + '\n';
    }
    return s;
}

void export_ply(const SceneOutput& scene, const std::filesystem::path& path) { write_file(path, ply_string(scene)); }

std::string obj_string(const SceneOutput& scene) {
    const TerrainMesh& m = scene.mesh;
    std::string s;
    s.reserve(m.positions.size() * 40 + m.face_count() * 24 + 64);
    s += "# lowpoly terrain\n";
    for (const Vec3& p : m.positions) {
        s += "v ";
        append_xyz(s, p);
        s += '\n';
    }
    for (std::size_t i = 0; i < m.positions.size(); ++i) s += "vt 0 0\n";
    for (std::size_t f = 0; f < m.face_count(); ++f) {
        s += "f " + std::to_string(3 * f + 1) + ' ' + std::to_string(3 * f + 2) + ' ' + std::to_string(3 * f + 3) +
             '\n';
    }
    return s;
}

void export_obj(const SceneOutput& scene, const std::filesystem::path& path) { write_file(path, obj_string(scene)); }

nlohmann::ordered_json manifest_json(const SceneOutput& scene, const ManifestOptions& options) {
    nlohmann::ordered_json doc;
    doc["config"] = scene.config;

    auto stats = nlohmann::ordered_json::array();
    for (const StageStat& st : scene.stats) {
        nlohmann::ordered_json row;
        row["stage"] = st.stage;
        if (options.include_timings) row["duration_ms"] = st.duration_ms;
        row["count"] = st.count;
        stats.push_back(std::move(row));
    }
    doc["stats"] = std::move(stats);

    nlohmann::ordered_json mesh;
    mesh["vertices"] = scene.mesh.positions.size();
    mesh["triangles"] = scene.mesh.face_count();
    mesh["walls"] = scene.mesh.wall_count();
    doc["mesh"] = std::move(mesh);

    auto placements = nlohmann::ordered_json::array();
    for (const auto& p : scene.placements) {
        nlohmann::ordered_json row;
        row["name"] = p.name;
        row["anchor"] = p.anchor;
        row["x"] = p.position.x;
        row["y"] = p.position.y;
        row["z"] = p.position.z;
        row["yaw"] = p.yaw;
        placements.push_back(std::move(row));
    }
    doc["placements"] = std::move(placements);
    return doc;
}

std::string manifest_string(const SceneOutput& scene, const ManifestOptions& options) {
    return manifest_json(scene, options).dump(2) + "\n";
}

void write_manifest(const SceneOutput& scene, const std::filesystem::path& path, const ManifestOptions& options) {
    write_file(path, manifest_string(scene, options));
}

}  // namespace lowpoly::io
