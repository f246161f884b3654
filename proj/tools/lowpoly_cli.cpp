#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowpoly/pipeline.hpp"

namespace {

using namespace lowpoly;

pipeline::GenerationConfig base_config(const std::string& path) {
    return path.empty() ? pipeline::GenerationConfig{} : pipeline::load_config(path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ExportError("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw ExportError("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-poly terraced terrain generator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<std::string> formats;
    bool timings = false;
    bool smooth = false;
    std::string dump_points;

    auto* gen = app.add_subcommand("generate", "Run the pipeline and write mesh files plus manifest.json");
    gen->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "Override master_seed");
    gen->add_option("--out", out_dir, "Output directory (overrides outputs.directory)");
    gen->add_option("--format", formats, "Output formats: ply, obj")->check(CLI::IsMember({"ply", "obj"}));
    gen->add_flag("--timings", timings, "Include stage durations in the manifest");
    gen->add_flag("--smooth", smooth, "Skip terracing; Y = noise * height_scale");
    gen->add_option("--dump-points", dump_points, "Write the sampled points as CSV");

    std::vector<std::size_t> sizes{10000, 50000, 100000};
    int reps = 3;
    std::string bench_json;
    auto* bench = app.add_subcommand("bench", "Time the pipeline at several vertex counts");
    bench->add_option("--config", config_path, "Base JSON configuration")->check(CLI::ExistingFile);
    bench->add_option("--sizes", sizes, "Target vertex counts")->delimiter(',');
    bench->add_option("--reps", reps, "Runs averaged per size")->check(CLI::Range(3, 1000));
    bench->add_option("--json", bench_json, "Also write the report as JSON");

    auto* defaults = app.add_subcommand("default-config", "Print the built-in configuration as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            auto config = base_config(config_path);
            if (seed) config.master_seed = *seed;
            if (!out_dir.empty()) config.outputs.directory = out_dir;
            if (!formats.empty()) config.outputs.formats = formats;
            if (smooth) config.terraced = false;

            const auto result = pipeline::generate(config);
            if (!dump_points.empty()) write_text(dump_points, pipeline::points_csv(result.mesh2d.points));
            const auto paths = pipeline::write_outputs(result.scene, config.outputs, {timings});

            const auto& mesh = result.scene.mesh;
            std::printf("%zu points, %zu triangles, %zu walls, %zu placements\n", result.mesh2d.points.size(),
                        mesh.face_count(), mesh.wall_count(), result.scene.placements.size());
            for (const auto& p : paths) std::printf("wrote %s\n", p.string().c_str());
        } else if (*bench) {
            const auto report = pipeline::bench(base_config(config_path), sizes, reps);
            std::cout << report.table();
            if (!bench_json.empty()) write_text(bench_json, report.to_json().dump(2) + "\n");
        } else if (*defaults) {
            std::cout << pipeline::config_to_json(pipeline::GenerationConfig{}).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
