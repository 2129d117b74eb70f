#include "timeloop.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "parallel.h"

namespace bubblesim {

double compute_substep_dt(double max_speed, double dx, double cfl, double remaining,
                          int substeps_done, int max_substeps, double rho, double sigma,
                          bool* stretched)
{
    if (stretched) *stretched = false;
    const double eps = 1e-8;
    double dt = std::min(remaining, cfl * dx / (max_speed + eps));
    if (sigma > 0.0) {
        double tension_dt = std::sqrt(rho * dx * dx * dx / (2.0 * M_PI * sigma));
        dt = std::min(dt, tension_dt);
    }
    int substeps_left = max_substeps - substeps_done;
    if (substeps_left <= 1) {
        if (dt < remaining && stretched) *stretched = true;
        return remaining;
    }
    if (dt * substeps_left < remaining * (1.0 - 1e-12)) {
        if (stretched) *stretched = true;
        return remaining / substeps_left;
    }
    return dt;
}

double volume_correction_source(double target_volume, double current_volume, double gain,
                                double dt)
{
    if (gain == 0.0 || current_volume <= 0.0 || dt <= 0.0) return 0.0;
    double s = gain * (target_volume - current_volume) / current_volume / dt;
    double cap = 0.01 / dt;
    return std::clamp(s, -cap, cap);
}

namespace {

double measured_liquid_volume(const StaggeredGrid& grid, const CellField<double>& phi,
                              const MaterialMap& map)
{
    const double dx = grid.dx;
    double fractions = chunked_sum(phi.count(), [&](int c) {
        if (map.label[c] == CellLabel::Solid) return 0.0;
        return std::clamp(0.5 - phi[c] / (2.0 * dx), 0.0, 1.0);
    });
    return fractions * dx * dx;
}

double max_abs_face(const FaceField& field)
{
    double m = 0.0;
    for (double v : field.data()) m = std::max(m, std::fabs(v));
    return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

Simulation::Simulation(const ScenarioConfig& config)
    : config_(config), grid_(config.nx, config.ny, config.dx, config.origin),
      solids_(config.solids), phi_liquid_(grid_, SurfaceKind::Liquid),
      phi_solid_(grid_, SurfaceKind::Solid), velocity_(config.nx, config.ny, 0.0),
      valid_(config.nx, config.ny, 0)
{
    validate_config(config_);
    PrimitiveSet liquid(config_.liquid);
    phi_liquid_.sample(grid_, [&](Vec2 p) { return liquid.sdf(p, 0.0); });
    map_.open_sides = config_.open_sides;
    refresh_materials();
    volume_target_ = measured_liquid_volume(grid_, phi_liquid_.phi, map_);
}

void Simulation::update_solids(double t)
{
    phi_solid_.sample(grid_, [&](Vec2 p) { return solids_.sdf(p, t); });
}

void Simulation::refresh_materials()
{
    update_solids(time_);
    map_.open_sides = config_.open_sides;
    classify_cells(grid_, phi_liquid_, phi_solid_, map_);
    geometry_ = compute_face_geometry(grid_, solids_, time_, time_, map_, phi_liquid_.phi);
    label_bubbles(map_);
    if (!config_.bubbles_enabled) {
        std::fill(map_.active.begin(), map_.active.end(), uint8_t{0});
    } else {
        bubble_liquid_area(grid_, map_, geometry_);
        prune_constraints(grid_, map_, find_enclosure_groups(map_), config_.freesurface_seeds);
    }
}

StepStats Simulation::step_frame()
{
    StepStats stats;
    const double frame_dt = config_.frame_dt();
    double remaining = frame_dt;
    int substeps_done = 0;

    while (remaining > 1e-12 * frame_dt) {
        bool stretched = false;
        double dt = compute_substep_dt(max_abs_face(velocity_), grid_.dx, config_.cfl, remaining,
                                       substeps_done, config_.max_substeps, config_.rho,
                                       config_.sigma, &stretched);
        if (stretched) {
            std::fprintf(stderr,
                         "warning: frame %d substep %d: CFL overridden, dt stretched to %g\n",
                         frame_index_, substeps_done, dt);
            stats.cfl_stretched = true;
        }

        SubstepRecord record;
        record.frame = frame_index_;
        record.substep = substeps_done;
        record.dt = dt;
        run_substep(dt, record);
        stats.records.push_back(std::move(record));

        remaining -= dt;
        ++substeps_done;
    }

    stats.substeps = substeps_done;
    ++frame_index_;
    return stats;
}

void Simulation::run_substep(double dt, SubstepRecord& record)
{
    const double t0 = time_;
    const double t1 = time_ + dt;

    // Advect the surface and the velocity field through the current flow.
    CellField<double> phi_next = advect_cell_field(grid_, phi_liquid_.phi, velocity_, dt);
    FaceField u_star = advect_face_field(grid_, velocity_, velocity_, dt);

    const double gx = config_.gravity.x;
    const double gy = config_.gravity.y;
    if (gx != 0.0)
        parallel_for(u_star.u_count(), [&](int f) { u_star.flat(f) += gx * dt; });
    if (gy != 0.0)
        parallel_for(u_star.v_count(), [&](int f) { u_star.flat(u_star.u_count() + f) += gy * dt; });

    redistance(grid_, phi_next);
    phi_liquid_.phi = std::move(phi_next);

    // Solids advance to the end of the substep; faces see their mean velocity.
    update_solids(t1);
    map_.open_sides = config_.open_sides;
    classify_cells(grid_, phi_liquid_, phi_solid_, map_);
    geometry_ = compute_face_geometry(grid_, solids_, t1, t0, map_, phi_liquid_.phi);

    label_bubbles(map_);
    if (!config_.bubbles_enabled) {
        std::fill(map_.active.begin(), map_.active.end(), uint8_t{0});
    } else {
        bubble_liquid_area(grid_, map_, geometry_);
        prune_constraints(grid_, map_, find_enclosure_groups(map_), config_.freesurface_seeds);
    }

    FaceField kappa;
    const FaceField* kappa_ptr = nullptr;
    if (config_.sigma > 0.0) {
        kappa = compute_face_curvature(grid_, phi_liquid_.phi, map_, geometry_);
        kappa_ptr = &kappa;
    }

    double volume = measured_liquid_volume(grid_, phi_liquid_.phi, map_);
    double source = volume_correction_source(volume_target_, volume, config_.volume_gain, dt);

    PhysicsParams params{config_.rho, config_.gravity, config_.sigma, dt};

    auto assembly_start = std::chrono::steady_clock::now();
    system_ = assemble_reduced_system(grid_, map_, geometry_, u_star, params, kappa_ptr, source);
    record.assembly_time = seconds_since(assembly_start);

    if (config_.output.dump_matrix) {
        char name[96];
        std::snprintf(name, sizeof name, "/system_f%05d_s%02d", record.frame, record.substep);
        std::string base = config_.output.directory + name;
        write_matrix_market(system_.A, system_.rhs, base + ".mtx", base + "_rhs.mtx");
    }

    auto solve_start = std::chrono::steady_clock::now();
    PcgOptions options;
    options.tolerance = config_.solver_tolerance;
    SolveReport report = pcg_solve(system_.A, system_.rhs, solution_, options);
    record.solve_time = seconds_since(solve_start);
    if (!report.converged)
        throw SolverError("pressure solve did not converge at frame " +
                          std::to_string(record.frame) + " substep " +
                          std::to_string(record.substep) + " (relative residual " +
                          std::to_string(report.relative_residual) + ")");

    record.max_u_star = max_abs_face(u_star);
    apply_pressure_gradient(grid_, map_, geometry_, system_, solution_, params, u_star, kappa_ptr,
                            velocity_, valid_);

    record.n_bubbles = map_.n_bubbles;
    record.n_active = 0;
    for (uint8_t a : map_.active) record.n_active += a;
    record.liquid_volume = volume;
    record.cg_iterations = report.iterations;
    record.relative_residual = report.relative_residual;
    record.max_u = max_abs_face(velocity_);
    record.bubble_active.assign(map_.active.begin(), map_.active.end());

    record.bubble_volumes.assign(static_cast<size_t>(map_.n_bubbles), 0.0);
    for (int c = 0; c < map_.bubble_id.count(); ++c) {
        int b = map_.bubble_id[c];
        if (b >= 0) record.bubble_volumes[static_cast<size_t>(b)] += grid_.dx * grid_.dx;
    }

    record.bubble_fluxes = measure_bubble_fluxes(grid_, map_, geometry_, velocity_);
    record.max_constraint_flux = 0.0;
    record.solid_flux_total = 0.0;
    for (int b = 0; b < map_.n_bubbles; ++b) {
        const BubbleFlux& flux = record.bubble_fluxes[static_cast<size_t>(b)];
        record.solid_flux_total += flux.solid;
        if (map_.active[static_cast<size_t>(b)])
            record.max_constraint_flux =
                std::max(record.max_constraint_flux, std::fabs(flux.net()));
    }

    extrapolate_velocity(grid_, velocity_, valid_, config_.extrapolation_layers);

    time_ = t1;
}

} // namespace bubblesim
