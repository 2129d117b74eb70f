#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "runner.h"
#include "scenario.h"

namespace {

bubblesim::ScenarioConfig load_scenario(const std::string& spec)
{
    const std::string prefix = "preset:";
    if (spec.rfind(prefix, 0) == 0) return bubblesim::build_preset(spec.substr(prefix.size()));
    return bubblesim::parse_config(spec);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Grid-based free-surface liquid solver with incompressible bubble constraints"};
    app.require_subcommand(1);

    std::string scenario_spec;
    std::string out_dir;
    int frames_override = -1;
    bool no_bubbles = false;
    bool dump_matrix = false;
    bool timing = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario and write diagnostics + frames");
    run->add_option("scenario", scenario_spec, "config.json path or preset:NAME")->required();
    run->add_option("--out", out_dir, "output directory (overrides config)");
    run->add_option("--frames", frames_override, "frame count override");
    run->add_flag("--no-bubbles", no_bubbles, "disable bubble constraints (free surface solve)");
    run->add_flag("--dump-matrix", dump_matrix, "dump per-substep systems in Matrix Market form");
    run->add_flag("--timing", timing,
                  "write real per-substep times into diagnostics.csv (not reproducible)");

    std::string cmp_spec;
    std::string cmp_out;
    int cmp_frames = 10;
    CLI::App* compare =
        app.add_subcommand("compare", "run with and without bubbles, report solver overhead");
    compare->add_option("scenario", cmp_spec, "config.json path or preset:NAME")->required();
    compare->add_option("--frames", cmp_frames, "frames per leg (default 10)");
    compare->add_option("--out", cmp_out, "directory for compare.json (overrides config)");

    CLI::App* presets = app.add_subcommand("presets", "list available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (presets->parsed()) {
            for (const std::string& name : bubblesim::preset_names())
                std::printf("%-24s %s\n", name.c_str(),
                            bubblesim::preset_description(name).c_str());
            return 0;
        }

        if (run->parsed()) {
            bubblesim::ScenarioConfig config = load_scenario(scenario_spec);
            if (!out_dir.empty()) config.output.directory = out_dir;
            if (frames_override >= 0) config.n_frames = frames_override;
            if (no_bubbles) config.bubbles_enabled = false;
            if (dump_matrix) config.output.dump_matrix = true;
            if (timing) config.output.timing = true;

            bubblesim::RunResult result = bubblesim::run_scenario(config);
            std::printf("scenario %s: %d frame(s), %ld substep(s), %.2f s\n",
                        config.name.c_str(), result.frames_completed, result.total_substeps,
                        result.wall_time);
            std::printf("mean CG iterations %.1f, mean solve %.4f s, outputs in %s\n",
                        result.mean_cg_iterations, result.mean_solve_time,
                        config.output.directory.c_str());
            if (result.exit_code != 0)
                std::fprintf(stderr, "solver abort: %s\n", result.error.c_str());
            return result.exit_code;
        }

        if (compare->parsed()) {
            bubblesim::ScenarioConfig config = load_scenario(cmp_spec);
            if (!cmp_out.empty()) config.output.directory = cmp_out;
            bubblesim::CompareReport report = bubblesim::compare_scenario(config, cmp_frames);

            std::printf("%-18s %10s %14s %14s %12s\n", "leg", "substeps", "assembly [s]",
                        "solve [s]", "CG iters");
            auto print_leg = [](const char* name, const bubblesim::CompareLeg& leg) {
                std::printf("%-18s %10ld %14.6f %14.6f %12.1f\n", name, leg.substeps,
                            leg.mean_assembly_time, leg.mean_solve_time, leg.mean_cg_iterations);
            };
            print_leg("with bubbles", report.with_bubbles);
            print_leg("without bubbles", report.without_bubbles);
            std::printf("per-substep time ratio %.3f, iteration ratio %.3f\n", report.time_ratio,
                        report.iteration_ratio);

            std::filesystem::create_directories(config.output.directory);
            std::string path = config.output.directory + "/compare.json";
            bubblesim::write_compare_report(report, path);
            std::printf("report written to %s\n", path.c_str());
            return 0;
        }
    } catch (const bubblesim::ConfigError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
