#ifndef BUBBLESIM_MATERIALS_H
#define BUBBLESIM_MATERIALS_H

#include <cstdint>
#include <vector>

#include "grid.h"
#include "levelset.h"
#include "scene.h"

namespace bubblesim {

enum class CellLabel : uint8_t { Liquid, Air, Solid };

struct OpenSides {
    bool left = false;
    bool right = false;
    bool bottom = false;
    bool top = false;
    bool any() const { return left || right || bottom || top; }
};

// Per-cell material labels plus the bubble bookkeeping filled in by the
// region pass: region ids over air cells, the active-constraint set, and
// each bubble's total liquid-face area.
struct MaterialMap {
    CellField<CellLabel> label;
    CellField<int32_t> bubble_id; // -1 on non-air cells
    int n_bubbles = 0;
    std::vector<uint8_t> active;
    std::vector<double> liquid_area;
    OpenSides open_sides;
};

// Solid wins where both SDFs are negative; outside both is air.
void classify_cells(const StaggeredGrid& grid, const LevelSetField& phi_liquid,
                    const LevelSetField& phi_solid, MaterialMap& map);

// Fraction of a face segment outside the solid, from the solid SDF at the
// segment's two endpoints (linear interpolant, clamped to [0, 1]).
double face_fraction(double phi_solid_end1, double phi_solid_end2);

// Ghost-fluid liquid fraction for a liquid-air cell pair. Falls back to 1
// when the sample signs disagree with the labels.
inline constexpr double kThetaMin = 0.01;
double ghost_theta(double phi_liquid_cell, double phi_air_cell);

// Per-face cut-cell fractions, GFM thetas, and prescribed solid normal
// velocities. Solid geometry is evaluated at t_eval (end of the substep);
// solid velocities are the mean over [t_prev, t_eval]. Closed domain sides
// are solid walls (w = 0); open sides expose virtual air beyond the boundary.
struct FaceGeometry {
    FaceField w;
    FaceField theta;
    FaceField solid_u;
};

FaceGeometry compute_face_geometry(const StaggeredGrid& grid, const PrimitiveSet& solids,
                                   double t_eval, double t_prev, const MaterialMap& map,
                                   const CellField<double>& phi_liquid);

} // namespace bubblesim

#endif
