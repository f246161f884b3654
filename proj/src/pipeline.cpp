#include "lowpoly/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <sys/resource.h>

#include "lowpoly/random.hpp"

namespace lowpoly::pipeline {

std::uint64_t derive_seed(std::uint64_t master, StreamId stream) {
    return stage_seed(master, static_cast<std::uint64_t>(stream));
}

void validate(const GenerationConfig& config) {
    sampling::validate(config.sample);
    sampling::validate(config.expansion);
    heightfield::validate(config.noise);
    heightfield::validate(config.falloff);
    heightfield::validate(config.biomes);
    shading::validate(config.gradients, config.biomes);
    terracing::validate(config.terrace);
    if (!(config.resolved_jitter() >= 0.0)) throw ConfigError("jitter magnitude must be non-negative");
    for (const auto& spec : config.environment) environment::validate(spec);
    if (!(config.height_scale > 0.0)) throw ConfigError("height_scale must be positive");
    for (const auto& f : config.outputs.formats) {
        if (f != "ply" && f != "obj") throw ConfigError("unknown output format '" + f + "'");
    }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

Rgb rgb_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be an [r, g, b] array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ojson rgb_to(const Rgb& c) { return ojson::array({c.r, c.g, c.b}); }

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& target) {
    if (obj.contains(key)) target = obj.at(key).get<T>();
}

}  // namespace

GenerationConfig config_from_json(const json& doc) {
    GenerationConfig c;
    try {
        check_keys(doc, "config", {"master_seed", "sample", "expansion", "noise", "falloff", "biomes", "terrace",
                                   "jitter", "environment", "terraced", "height_scale", "outputs", "seeds"});
        read(doc, "master_seed", c.master_seed);
        read(doc, "terraced", c.terraced);
        read(doc, "height_scale", c.height_scale);

        if (doc.contains("sample")) {
            const json& s = doc["sample"];
            check_keys(s, "sample", {"width", "height", "radius", "attempts"});
            read(s, "width", c.sample.width);
            read(s, "height", c.sample.height);
            read(s, "radius", c.sample.radius);
            read(s, "attempts", c.sample.attempts);
        }
        if (doc.contains("expansion")) {
            const json& e = doc["expansion"];
            check_keys(e, "expansion", {"rings", "base_gap", "gap_growth", "ring_spacing"});
            read(e, "rings", c.expansion.rings);
            read(e, "base_gap", c.expansion.base_gap);
            read(e, "gap_growth", c.expansion.gap_growth);
            read(e, "ring_spacing", c.expansion.ring_spacing);
        }
        if (doc.contains("noise")) {
            const json& n = doc["noise"];
            check_keys(n, "noise", {"scale", "octaves", "lacunarity", "persistence", "offset"});
            read(n, "scale", c.noise.scale);
            read(n, "octaves", c.noise.octaves);
            read(n, "lacunarity", c.noise.lacunarity);
            read(n, "persistence", c.noise.persistence);
            if (n.contains("offset")) {
                const json& o = n["offset"];
                if (!o.is_array() || o.size() != 2) throw ConfigError("noise.offset must be [x, z]");
                c.noise.offset = {o[0].get<double>(), o[1].get<double>()};
            }
        }
        if (doc.contains("falloff")) {
            const json& f = doc["falloff"];
            check_keys(f, "falloff", {"boundary", "ground"});
            read(f, "boundary", c.falloff.boundary);
            read(f, "ground", c.falloff.ground);
        }
        if (doc.contains("biomes")) {
            const json& b = doc["biomes"];
            check_keys(b, "biomes", {"bounds", "gradients", "wall_color"});
            read(b, "bounds", c.biomes.bounds);
            if (b.contains("gradients")) {
                c.gradients.bands.clear();
                for (const json& g : b["gradients"]) {
                    check_keys(g, "biomes.gradients[]", {"low", "high"});
                    c.gradients.bands.push_back({rgb_from(g.at("low"), "gradient low"),
                                                 rgb_from(g.at("high"), "gradient high")});
                }
            }
            if (b.contains("wall_color")) c.gradients.wall_color = rgb_from(b["wall_color"], "wall_color");
        }
        if (doc.contains("terrace")) {
            const json& t = doc["terrace"];
            check_keys(t, "terrace", {"terrace_height", "resolve_saddles"});
            read(t, "terrace_height", c.terrace.terrace_height);
            read(t, "resolve_saddles", c.terrace.resolve_saddles);
        }
        if (doc.contains("jitter")) {
            const json& j = doc["jitter"];
            check_keys(j, "jitter", {"magnitude", "seed"});
            if (j.contains("magnitude")) c.jitter_magnitude = j["magnitude"].get<double>();
        }
        if (doc.contains("environment")) {
            c.environment.clear();
            for (const json& e : doc["environment"]) {
                check_keys(e, "environment[]", {"name", "noise", "biomes", "probability", "footprint", "max_offset"});
                environment::ObjectSpec spec;
                read(e, "name", spec.name);
                if (e.contains("noise")) {
                    const json& n = e["noise"];
                    if (!n.is_array() || n.size() != 2) throw ConfigError("environment noise must be [lo, hi]");
                    spec.eligibility.noise_lo = n[0].get<double>();
                    spec.eligibility.noise_hi = n[1].get<double>();
                }
                read(e, "biomes", spec.eligibility.biomes);
                read(e, "probability", spec.probability);
                read(e, "footprint", spec.footprint);
                read(e, "max_offset", spec.max_offset);
                c.environment.push_back(std::move(spec));
            }
        }
        if (doc.contains("outputs")) {
            const json& o = doc["outputs"];
            check_keys(o, "outputs", {"formats", "directory"});
            read(o, "formats", c.outputs.formats);
            read(o, "directory", c.outputs.directory);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    validate(c);
    return c;
}

GenerationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

ojson config_to_json(const GenerationConfig& c) {
    ojson doc;
    doc["master_seed"] = c.master_seed;
    ojson seeds;
    seeds["sample"] = derive_seed(c.master_seed, StreamId::Sampling);
    seeds["noise"] = derive_seed(c.master_seed, StreamId::Noise);
    seeds["jitter"] = derive_seed(c.master_seed, StreamId::Jitter);
    seeds["environment"] = derive_seed(c.master_seed, StreamId::Environment);
    doc["seeds"] = seeds;
    doc["terraced"] = c.terraced;
    doc["height_scale"] = c.height_scale;
    doc["sample"] = {{"width", c.sample.width},
                     {"height", c.sample.height},
                     {"radius", c.sample.radius},
                     {"attempts", c.sample.attempts}};
    doc["expansion"] = {{"rings", c.expansion.rings},
                        {"base_gap", c.expansion.base_gap},
                        {"gap_growth", c.expansion.gap_growth},
                        {"ring_spacing", c.expansion.ring_spacing}};
    doc["noise"] = {{"scale", c.noise.scale},
                    {"octaves", c.noise.octaves},
                    {"lacunarity", c.noise.lacunarity},
                    {"persistence", c.noise.persistence},
                    {"offset", {c.noise.offset.x, c.noise.offset.z}}};
    doc["falloff"] = {{"boundary", c.falloff.boundary}, {"ground", c.falloff.ground}};
    ojson gradients = ojson::array();
    for (const auto& g : c.gradients.bands) gradients.push_back({{"low", rgb_to(g.low)}, {"high", rgb_to(g.high)}});
    doc["biomes"] = {{"bounds", c.biomes.bounds}, {"gradients", gradients}, {"wall_color", rgb_to(c.gradients.wall_color)}};
    doc["terrace"] = {{"terrace_height", c.terrace.terrace_height},
                      {"resolve_saddles", c.terrace.resolve_saddles}};
    doc["jitter"] = {{"magnitude", c.resolved_jitter()}};
    ojson env = ojson::array();
    for (const auto& s : c.environment) {
        ojson e;
        e["name"] = s.name;
        if (s.eligibility.by_biome()) {
            e["biomes"] = s.eligibility.biomes;
        } else {
            e["noise"] = {s.eligibility.noise_lo, s.eligibility.noise_hi};
        }
        e["probability"] = s.probability;
        e["footprint"] = s.footprint;
        e["max_offset"] = s.max_offset;
        env.push_back(std::move(e));
    }
    doc["environment"] = env;
    doc["outputs"] = {{"formats", c.outputs.formats}, {"directory", c.outputs.directory}};
    return doc;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
  public:
    explicit StageTimer(std::vector<io::StageStat>& stats) : stats_(stats) {}

    template <typename F>
    void run(std::size_t stage, F&& body) {
        const auto start = Clock::now();
        std::size_t count = 0;
        try {
            count = body();
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(kStageNames[stage], e.what());
        }
        const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
        stats_.push_back({kStageNames[stage], elapsed.count(), count});
    }

  private:
    std::vector<io::StageStat>& stats_;
};

}  // namespace

TerrainMesh build_smooth_mesh(const triangulation::TriangleMesh2D& mesh, std::span<const double> elevation,
                              std::span<const double> noise, const heightfield::BiomeTable& table) {
    const auto& pts = mesh.points.points;
    auto at = [&](std::uint32_t v) { return Vec3{pts[v].x, elevation[v], pts[v].z}; };
    TerrainMesh out;
    out.positions.reserve(3 * mesh.triangles.size());
    for (std::uint32_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const double mean = (noise[t[0]] + noise[t[1]] + noise[t[2]]) / 3.0;
        out.add_face(at(t[0]), at(t[2]), at(t[1]), t[0], t[2], t[1], false, heightfield::assign_biome(mean, table), ti);
    }
    return out;
}

GenerationResult generate(const GenerationConfig& config) {
    validate(config);
    GenerationResult r;
    auto& stats = r.scene.stats;
    StageTimer timer(stats);

    sampling::PointSet points;
    timer.run(0, [&] {
        sampling::SampleConfig sc = config.sample;
        sc.seed = derive_seed(config.master_seed, StreamId::Sampling);
        points = sampling::poisson_disc(sc);
        return points.core_count;
    });

    timer.run(1, [&] {
        points = sampling::expand_square(points, config.expansion);
        return points.size();
    });

    timer.run(2, [&] {
        r.mesh2d = triangulation::bowyer_watson(points);
        r.graph = triangulation::build_adjacency(r.mesh2d);
        return r.mesh2d.triangles.size();
    });

    const auto& pts = r.mesh2d.points.points;
    const std::size_t n = pts.size();
    timer.run(3, [&] {
        heightfield::NoiseParams np = config.noise;
        np.seed = derive_seed(config.master_seed, StreamId::Noise);
        const heightfield::GradientNoise gradient(np.seed);
        std::vector<double> raw(n);
        for (std::size_t i = 0; i < n; ++i) raw[i] = heightfield::layered_noise(pts[i], np, gradient);
        r.noise = heightfield::normalize(raw);
        r.band.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            r.noise[i] = heightfield::apply_falloff(pts[i], r.noise[i], points.width, points.height, config.falloff);
            r.band[i] = heightfield::assign_biome(r.noise[i], config.biomes);
        }
        return n;
    });

    TerrainMesh mesh;
    timer.run(4, [&] {
        if (config.terraced) {
            const int bands = static_cast<int>(config.biomes.band_count());
            r.biome = terracing::repair_spans(r.mesh2d, r.band, bands, &r.repair_sweeps);
            if (config.terrace.resolve_saddles) r.saddles_lowered = terracing::resolve_saddles(r.mesh2d, r.biome, bands);
            r.ground_y.resize(n);
            for (std::size_t i = 0; i < n; ++i) r.ground_y[i] = terracing::elevate(r.biome[i], config.terrace);
            r.walls = terracing::mark_invalid_walls(r.mesh2d, r.biome);
            mesh = terracing::build_terraced_mesh(r.mesh2d, r.biome, config.terrace, r.walls);
            r.surface_noise = terracing::recalc_all(r.graph, config.biomes, r.biome, r.noise);
        } else {
            r.biome = r.band;
            r.surface_noise = r.noise;
            r.ground_y.resize(n);
            for (std::size_t i = 0; i < n; ++i) r.ground_y[i] = r.noise[i] * config.height_scale;
            mesh = build_smooth_mesh(r.mesh2d, r.ground_y, r.noise, config.biomes);
        }
        return mesh.face_count();
    });

    timer.run(5, [&] {
        shading::color_mesh(mesh, r.surface_noise, config.biomes, config.gradients);
        r.unjittered = mesh;
        if (config.terraced) {
            shading::JitterParams jp{config.resolved_jitter(), derive_seed(config.master_seed, StreamId::Jitter)};
            r.scene.mesh = shading::jitter(mesh, jp);
        } else {
            r.scene.mesh = std::move(mesh);
        }
        return r.scene.mesh.face_count();
    });

    timer.run(6, [&] {
        environment::TerrainView view{&r.mesh2d, &r.graph, r.biome, r.surface_noise, r.ground_y};
        r.scene.placements = environment::place_objects(view, config.environment,
                                                        derive_seed(config.master_seed, StreamId::Environment));
        return r.scene.placements.size();
    });

    r.scene.config = config_to_json(config);
    return r;
}

std::vector<std::filesystem::path> write_outputs(const io::SceneOutput& scene, const OutputConfig& outputs,
                                                 const io::ManifestOptions& manifest_options) {
    const std::filesystem::path dir(outputs.directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ExportError("cannot create " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    for (const auto& f : outputs.formats) {
        const auto path = dir / ("terrain." + f);
        if (f == "ply") {
            io::export_ply(scene, path);
        } else if (f == "obj") {
            io::export_obj(scene, path);
        } else {
            throw ExportError("unknown format " + f);
        }
        written.push_back(path);
    }
    const auto manifest = dir / "manifest.json";
    io::write_manifest(scene, manifest, manifest_options);
    written.push_back(manifest);
    return written;
}

std::string points_csv(const sampling::PointSet& points) {
    std::string s = "x,z,kind\n";
    char buf[96];
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%s\n", points.points[i].x, points.points[i].z,
                      points.is_core(i) ? "core" : "ring");
        s += buf;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Benchmark

GenerationConfig config_for_vertex_count(const GenerationConfig& base, std::size_t target) {
    GenerationConfig c = base;
    const double area = c.sample.width * c.sample.height;
    auto set_radius = [&](double core_target) {
        c.sample.radius = std::sqrt(kPoissonDensity * area / std::max(core_target, 1.0));
        c.expansion.base_gap = 2.0 * c.sample.radius;
        c.expansion.ring_spacing = 2.0 * c.sample.radius;
    };
    set_radius(static_cast<double>(target));
    // ring points depend on the radius; two rounds settle the count
    for (int round = 0; round < 2; ++round) {
        sampling::PointSet probe;
        probe.points = {{0.0, 0.0}};
        probe.core_count = 1;
        probe.width = c.sample.width;
        probe.height = c.sample.height;
        const double ring = static_cast<double>(sampling::expand_square(probe, c.expansion).size() - 1);
        set_radius(static_cast<double>(target) - ring);
    }
    return c;
}

BenchReport bench(const GenerationConfig& base, std::vector<std::size_t> sizes, int reps) {
    if (sizes.empty()) throw ConfigError("bench needs at least one size");
    if (reps < 3) throw ConfigError("bench needs at least three repetitions");
    std::sort(sizes.begin(), sizes.end());

    BenchReport report;
    report.repetitions = reps;
    report.hardware_note = std::to_string(std::max(1u, std::thread::hardware_concurrency())) +
                           " hardware threads, single-threaded pipeline";

    for (std::size_t target : sizes) {
        const GenerationConfig cfg = config_for_vertex_count(base, target);
        BenchRow row;
        row.target = target;
        for (int rep = 0; rep < reps; ++rep) {
            const auto start = Clock::now();
            GenerationResult res = generate(cfg);
            const std::chrono::duration<double, std::milli> total = Clock::now() - start;
            row.total_ms += total.count();
            for (std::size_t s = 0; s < kStageNames.size(); ++s) row.stage_ms[s] += res.scene.stats[s].duration_ms;
            row.vertex_count = res.mesh2d.points.size();
        }
        row.total_ms /= reps;
        for (double& ms : row.stage_ms) ms /= reps;
        report.rows.push_back(row);
    }

    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) == 0 && usage.ru_maxrss > 0) report.peak_rss_kb = usage.ru_maxrss;
    return report;
}

std::string BenchReport::table() const {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %-10s %12s", "target", "vertices", "total ms");
    out << line;
    for (const char* s : kStageNames) {
        std::string name(s);
        out << " | " << name;
    }
    out << '\n';
    for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof(line), "~%-9zu %-10zu %12.2f", r.target, r.vertex_count, r.total_ms);
        out << line;
        for (std::size_t s = 0; s < kStageNames.size(); ++s) {
            const int width = static_cast<int>(std::string(kStageNames[s]).size());
            std::snprintf(line, sizeof(line), " | %*.2f", width, r.stage_ms[s]);
            out << line;
        }
        out << '\n';
    }
    out << "repetitions: " << repetitions << ", " << hardware_note;
    if (peak_rss_kb) out << ", peak RSS " << *peak_rss_kb << " KB";
    out << '\n';
    return out.str();
}

nlohmann::ordered_json BenchReport::to_json() const {
    ojson doc;
    doc["repetitions"] = repetitions;
    doc["hardware_note"] = hardware_note;
    if (peak_rss_kb) doc["peak_rss_kb"] = *peak_rss_kb;
    ojson out_rows = ojson::array();
    for (const BenchRow& r : rows) {
        ojson row;
        row["target"] = r.target;
        row["vertex_count"] = r.vertex_count;
        row["total_ms"] = r.total_ms;
        ojson stages;
        for (std::size_t s = 0; s < kStageNames.size(); ++s) stages[kStageNames[s]] = r.stage_ms[s];
        row["stage_ms"] = stages;
        out_rows.push_back(std::move(row));
    }
    doc["rows"] = out_rows;
    return doc;
}

}  // namespace lowpoly::pipeline
