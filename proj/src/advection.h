#ifndef BUBBLESIM_ADVECTION_H
#define BUBBLESIM_ADVECTION_H

#include "grid.h"

namespace bubblesim {

// Bilinear MAC samplers; query points are clamped into the sample lattice.
double sample_u(const StaggeredGrid& grid, const FaceField& vel, Vec2 p);
double sample_v(const StaggeredGrid& grid, const FaceField& vel, Vec2 p);
Vec2 sample_velocity(const StaggeredGrid& grid, const FaceField& vel, Vec2 p);
double sample_cell(const StaggeredGrid& grid, const CellField<double>& field, Vec2 p);

// Second-order Runge-Kutta backtrace, clamped to the domain box.
Vec2 backtrace(const StaggeredGrid& grid, const FaceField& vel, Vec2 p, double dt);

CellField<double> advect_cell_field(const StaggeredGrid& grid, const CellField<double>& field,
                                    const FaceField& vel, double dt);
FaceField advect_face_field(const StaggeredGrid& grid, const FaceField& field,
                            const FaceField& vel, double dt);

// Breadth-first extrapolation: each layer assigns invalid faces the average
// of their valid 4-neighbours on the same component grid. Valid faces are
// never modified; faces still unreached after `layers` are zeroed.
void extrapolate_velocity(const StaggeredGrid& grid, FaceField& vel, FaceMask& valid, int layers);

} // namespace bubblesim

#endif
