#ifndef BUBBLESIM_LEVELSET_H
#define BUBBLESIM_LEVELSET_H

#include <functional>

#include "grid.h"

namespace bubblesim {

enum class SurfaceKind { Liquid, Solid };

// Cell-centered signed distances, negative inside the material.
struct LevelSetField {
    SurfaceKind kind = SurfaceKind::Liquid;
    CellField<double> phi;

    LevelSetField() = default;
    LevelSetField(const StaggeredGrid& grid, SurfaceKind kind_)
        : kind(kind_), phi(grid.nx, grid.ny, 0.0) {}

    void sample(const StaggeredGrid& grid, const std::function<double(Vec2)>& sdf);
};

// Fast-sweeping reinitialization toward |grad phi| = 1. Interface-adjacent
// cells are pinned to their linearly interpolated crossing distances, so the
// zero isocontour stays put; the sweeps rebuild distances outward. Returns
// false (field untouched) when phi has no zero crossing.
bool redistance(const StaggeredGrid& grid, CellField<double>& phi);

// Liquid area estimate with a linearly smeared Heaviside.
double liquid_volume(const StaggeredGrid& grid, const CellField<double>& phi);

} // namespace bubblesim

#endif
