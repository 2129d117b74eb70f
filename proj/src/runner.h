#ifndef BUBBLESIM_RUNNER_H
#define BUBBLESIM_RUNNER_H

#include <string>
#include <vector>

#include "timeloop.h"

namespace bubblesim {

struct RunResult {
    int exit_code = 0;
    std::string error; // empty on success
    int frames_completed = 0;
    long total_substeps = 0;
    double wall_time = 0.0;
    double mean_cg_iterations = 0.0;
    double mean_assembly_time = 0.0;
    double mean_solve_time = 0.0;
    double final_liquid_volume = 0.0;
    std::vector<double> final_bubble_volumes;
};

// Batch run: diagnostics.csv (one row per substep), frame_%05d.pgm material
// maps every frame stride, summary.json. Returns exit code 0, or 2 after a
// solver abort (partial outputs plus an error record are kept).
RunResult run_scenario(const ScenarioConfig& config);

// Per-substep measurements for one leg of a comparison run.
struct CompareLeg {
    long substeps = 0;
    double mean_assembly_time = 0.0;
    double mean_solve_time = 0.0;
    double mean_cg_iterations = 0.0;
    double mean_solid_flux = 0.0;
    std::vector<double> assembly_times;
    std::vector<double> solve_times;
    std::vector<int> cg_iterations;
    std::vector<double> solid_flux; // summed b_solid contributions per substep
};

struct CompareReport {
    CompareLeg with_bubbles;
    CompareLeg without_bubbles;
    double time_ratio = 0.0;      // mean (assembly + solve), with / without
    double iteration_ratio = 0.0; // mean CG iterations, with / without
};

// Runs the scenario's first `frames` frames twice, bubbles enabled and
// disabled, sequentially. No frame images are written.
CompareReport compare_scenario(ScenarioConfig config, int frames);

void write_compare_report(const CompareReport& report, const std::string& path);

// Grayscale material map: solid = 0, air = 255, liquid = 128 shaded darker
// with depth.
void write_frame_pgm(const Simulation& sim, const std::string& path);

std::string diagnostics_header();
std::string diagnostics_row(const SubstepRecord& record, bool timing);

} // namespace bubblesim

#endif
