#include "runner.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace bubblesim {

using nlohmann::json;

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string diagnostics_header()
{
    return "frame,substep,dt,n_bubbles,n_active,liquid_volume,max_u,max_u_star,"
           "max_constraint_flux,cg_iterations,relative_residual,assembly_time_s,solve_time_s,"
           "bubble_volumes";
}

std::string diagnostics_row(const SubstepRecord& r, bool timing)
{
    std::string volumes;
    for (size_t b = 0; b < r.bubble_volumes.size(); ++b) {
        if (b > 0) volumes += ';';
        volumes += fmt(r.bubble_volumes[b]);
    }
    std::string row;
    row += std::to_string(r.frame) + ",";
    row += std::to_string(r.substep) + ",";
    row += fmt(r.dt) + ",";
    row += std::to_string(r.n_bubbles) + ",";
    row += std::to_string(r.n_active) + ",";
    row += fmt(r.liquid_volume) + ",";
    row += fmt(r.max_u) + ",";
    row += fmt(r.max_u_star) + ",";
    row += fmt(r.max_constraint_flux) + ",";
    row += std::to_string(r.cg_iterations) + ",";
    row += fmt(r.relative_residual) + ",";
    row += fmt(timing ? r.assembly_time : 0.0) + ",";
    row += fmt(timing ? r.solve_time : 0.0) + ",";
    row += volumes;
    return row;
}

void write_frame_pgm(const Simulation& sim, const std::string& path)
{
    const StaggeredGrid& grid = sim.grid();
    const MaterialMap& map = sim.materials();
    const CellField<double>& phi = sim.liquid_phi();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";

    std::vector<unsigned char> row(static_cast<size_t>(grid.nx));
    for (int j = grid.ny - 1; j >= 0; --j) {
        for (int i = 0; i < grid.nx; ++i) {
            unsigned char value;
            switch (map.label(i, j)) {
            case CellLabel::Solid:
                value = 0;
                break;
            case CellLabel::Air:
                value = 255;
                break;
            default: {
                double depth = std::min(1.0, -phi(i, j) / (10.0 * grid.dx));
                value = static_cast<unsigned char>(128 - std::lround(48.0 * std::max(0.0, depth)));
                break;
            }
            }
            row[static_cast<size_t>(i)] = value;
        }
        out.write(reinterpret_cast<const char*>(row.data()), grid.nx);
    }
}

RunResult run_scenario(const ScenarioConfig& config)
{
    namespace fs = std::filesystem;
    const auto start = std::chrono::steady_clock::now();

    RunResult result;
    fs::create_directories(config.output.directory);
    const std::string dir = config.output.directory;

    std::ofstream csv(dir + "/diagnostics.csv");
    if (!csv) throw std::runtime_error("cannot open " + dir + "/diagnostics.csv");
    csv << diagnostics_header() << "\n";

    Simulation sim(config);

    long total_iters = 0;
    double total_assembly = 0.0;
    double total_solve = 0.0;
    std::vector<double> last_bubble_volumes;
    double last_liquid_volume = sim.liquid_volume_target();

    auto frame_path = [&](int frame) {
        char name[32];
        std::snprintf(name, sizeof name, "/frame_%05d.pgm", frame);
        return dir + name;
    };
    write_frame_pgm(sim, frame_path(0));

    std::string error_message;
    int frame = 0;
    try {
        for (frame = 1; frame <= config.n_frames; ++frame) {
            StepStats stats = sim.step_frame();
            for (const SubstepRecord& record : stats.records) {
                csv << diagnostics_row(record, config.output.timing) << "\n";
                ++result.total_substeps;
                total_iters += record.cg_iterations;
                total_assembly += record.assembly_time;
                total_solve += record.solve_time;
                last_bubble_volumes = record.bubble_volumes;
                last_liquid_volume = record.liquid_volume;
            }
            if (frame % config.output.frame_stride == 0) write_frame_pgm(sim, frame_path(frame));
            result.frames_completed = frame;
        }
    } catch (const SolverError& err) {
        error_message = err.what();
        try {
            write_matrix_market(sim.last_system().A, sim.last_rhs(), dir + "/abort_system.mtx",
                                dir + "/abort_rhs.mtx");
        } catch (const std::exception&) {
            // keep the original failure
        }
    }
    csv.close();

    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result.total_substeps > 0) {
        result.mean_cg_iterations = static_cast<double>(total_iters) / result.total_substeps;
        result.mean_assembly_time = total_assembly / result.total_substeps;
        result.mean_solve_time = total_solve / result.total_substeps;
    }
    result.final_liquid_volume = last_liquid_volume;
    result.final_bubble_volumes = last_bubble_volumes;

    json summary;
    summary["scenario"] = config.name;
    summary["seed"] = config.seed;
    summary["frames_completed"] = result.frames_completed;
    summary["total_substeps"] = result.total_substeps;
    summary["wall_time_s"] = result.wall_time;
    summary["mean_cg_iterations"] = result.mean_cg_iterations;
    summary["mean_assembly_time_s"] = result.mean_assembly_time;
    summary["mean_solve_time_s"] = result.mean_solve_time;
    summary["final_liquid_volume"] = result.final_liquid_volume;
    summary["final_bubble_volumes"] = result.final_bubble_volumes;
    if (error_message.empty()) {
        summary["error"] = nullptr;
    } else {
        summary["error"] = {{"message", error_message}, {"frame", frame}};
        result.exit_code = 2;
        result.error = error_message;
    }
    std::ofstream summary_out(dir + "/summary.json");
    summary_out << summary.dump(2) << "\n";

    return result;
}

namespace {

CompareLeg run_leg(const ScenarioConfig& config, int frames)
{
    CompareLeg leg;
    Simulation sim(config);
    for (int frame = 0; frame < frames; ++frame) {
        StepStats stats = sim.step_frame();
        for (const SubstepRecord& record : stats.records) {
            leg.assembly_times.push_back(record.assembly_time);
            leg.solve_times.push_back(record.solve_time);
            leg.cg_iterations.push_back(record.cg_iterations);
            leg.solid_flux.push_back(record.solid_flux_total);
        }
    }
    leg.substeps = static_cast<long>(leg.solve_times.size());
    if (leg.substeps > 0) {
        for (long s = 0; s < leg.substeps; ++s) {
            leg.mean_assembly_time += leg.assembly_times[static_cast<size_t>(s)];
            leg.mean_solve_time += leg.solve_times[static_cast<size_t>(s)];
            leg.mean_cg_iterations += leg.cg_iterations[static_cast<size_t>(s)];
            leg.mean_solid_flux += leg.solid_flux[static_cast<size_t>(s)];
        }
        leg.mean_assembly_time /= static_cast<double>(leg.substeps);
        leg.mean_solve_time /= static_cast<double>(leg.substeps);
        leg.mean_cg_iterations /= static_cast<double>(leg.substeps);
        leg.mean_solid_flux /= static_cast<double>(leg.substeps);
    }
    return leg;
}

json leg_to_json(const CompareLeg& leg)
{
    json j;
    j["substeps"] = leg.substeps;
    j["mean_assembly_time_s"] = leg.mean_assembly_time;
    j["mean_solve_time_s"] = leg.mean_solve_time;
    j["mean_cg_iterations"] = leg.mean_cg_iterations;
    j["mean_solid_flux"] = leg.mean_solid_flux;
    j["assembly_time_s"] = leg.assembly_times;
    j["solve_time_s"] = leg.solve_times;
    j["cg_iterations"] = leg.cg_iterations;
    j["solid_flux"] = leg.solid_flux;
    return j;
}

} // namespace

CompareReport compare_scenario(ScenarioConfig config, int frames)
{
    CompareReport report;

    ScenarioConfig with = config;
    with.bubbles_enabled = true;
    report.with_bubbles = run_leg(with, frames);

    ScenarioConfig without = config;
    without.bubbles_enabled = false;
    report.without_bubbles = run_leg(without, frames);

    double with_cost = report.with_bubbles.mean_assembly_time + report.with_bubbles.mean_solve_time;
    double without_cost =
        report.without_bubbles.mean_assembly_time + report.without_bubbles.mean_solve_time;
    report.time_ratio = without_cost > 0.0 ? with_cost / without_cost : 0.0;
    report.iteration_ratio = report.without_bubbles.mean_cg_iterations > 0.0
                                 ? report.with_bubbles.mean_cg_iterations /
                                       report.without_bubbles.mean_cg_iterations
                                 : 0.0;
    return report;
}

void write_compare_report(const CompareReport& report, const std::string& path)
{
    json j;
    j["with_bubbles"] = leg_to_json(report.with_bubbles);
    j["without_bubbles"] = leg_to_json(report.without_bubbles);
    j["time_ratio"] = report.time_ratio;
    j["iteration_ratio"] = report.iteration_ratio;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

} // namespace bubblesim
