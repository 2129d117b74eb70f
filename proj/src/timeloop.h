#ifndef BUBBLESIM_TIMELOOP_H
#define BUBBLESIM_TIMELOOP_H

#include <vector>

#include "advection.h"
#include "levelset.h"
#include "projection.h"
#include "regions.h"
#include "scenario.h"

namespace bubblesim {

// One substep worth of diagnostics.
struct SubstepRecord {
    int frame = 0;
    int substep = 0;
    double dt = 0.0;
    int n_bubbles = 0;
    int n_active = 0;
    double liquid_volume = 0.0;
    double max_u = 0.0;
    double max_u_star = 0.0;
    double max_constraint_flux = 0.0; // max |net boundary flux| over active bubbles
    double solid_flux_total = 0.0;    // summed prescribed-solid contributions (b_solid bookkeeping)
    int cg_iterations = 0;
    double relative_residual = 0.0;
    double assembly_time = 0.0;
    double solve_time = 0.0;
    std::vector<double> bubble_volumes;   // id-indexed cell-count areas
    std::vector<BubbleFlux> bubble_fluxes; // id-indexed
    std::vector<uint8_t> bubble_active;    // id-indexed
};

struct StepStats {
    int substeps = 0;
    bool cfl_stretched = false;
    std::vector<SubstepRecord> records;
};

// dt = min(remaining frame time, cfl * dx / (|u|max + eps)), additionally
// capped by the explicit surface-tension stability limit when sigma > 0.
// When the frame could not finish within max_substeps, dt is stretched to
// remaining / substeps_left instead.
double compute_substep_dt(double max_speed, double dx, double cfl, double remaining,
                          int substeps_done, int max_substeps, double rho, double sigma,
                          bool* stretched = nullptr);

// Uniform per-liquid-cell divergence source steering total liquid volume
// back to the target; clamped to 1% per substep. gain = 0 disables it.
double volume_correction_source(double target_volume, double current_volume, double gain,
                                double dt);

class Simulation {
public:
    explicit Simulation(const ScenarioConfig& config);

    StepStats step_frame();

    const ScenarioConfig& config() const { return config_; }
    const StaggeredGrid& grid() const { return grid_; }
    double time() const { return time_; }
    int frame_index() const { return frame_index_; }
    double liquid_volume_target() const { return volume_target_; }

    const CellField<double>& liquid_phi() const { return phi_liquid_.phi; }
    const CellField<double>& solid_phi() const { return phi_solid_.phi; }
    const FaceField& velocity() const { return velocity_; }
    const MaterialMap& materials() const { return map_; }
    const ReducedSystem& last_system() const { return system_; }
    const std::vector<double>& last_rhs() const { return system_.rhs; }
    const std::vector<double>& last_solution() const { return solution_; }

    // Re-derives labels/regions/geometry from the current fields without
    // stepping (initial-state inspection).
    void refresh_materials();

private:
    void run_substep(double dt, SubstepRecord& record);
    void update_solids(double t);

    ScenarioConfig config_;
    StaggeredGrid grid_;
    PrimitiveSet solids_;
    LevelSetField phi_liquid_;
    LevelSetField phi_solid_;
    FaceField velocity_;
    FaceMask valid_;
    MaterialMap map_;
    FaceGeometry geometry_;
    ReducedSystem system_;
    std::vector<double> solution_;
    double time_ = 0.0;
    int frame_index_ = 0;
    double volume_target_ = 0.0;
};

} // namespace bubblesim

#endif
