#ifndef BUBBLESIM_PROJECTION_H
#define BUBBLESIM_PROJECTION_H

#include <string>
#include <vector>

#include "materials.h"
#include "sparse.h"

namespace bubblesim {

struct PhysicsParams {
    double rho = 1000.0;
    Vec2 gravity{0.0, -9.8};
    double sigma = 0.0;
    double dt = 0.0;
};

// The reduced symmetric positive definite system over liquid pressures and
// active bubble multipliers, plus the unknown indexing.
struct ReducedSystem {
    SparseSymMatrix A;
    std::vector<double> rhs;
    CellField<int32_t> pressure_row; // -1 where a cell has no pressure unknown
    std::vector<int32_t> bubble_row; // per bubble id, -1 when inactive
    int n_pressure = 0;
    int n_multipliers = 0;
    std::vector<int> degenerate_bubbles; // deactivated during assembly
};

// Per-face curvature of the liquid surface, interpolated to the interface
// crossing and clamped to |kappa| <= 1/dx. Only liquid-air faces carry a
// meaningful value.
double cell_curvature(const StaggeredGrid& grid, const CellField<double>& phi, int i, int j);
FaceField compute_face_curvature(const StaggeredGrid& grid, const CellField<double>& phi,
                                 const MaterialMap& map, const FaceGeometry& geom);

// Assembles the Schur-complement system. Active bubbles with no liquid face
// cannot be enforced; they are deactivated in the map and recorded.
// divergence_source is a uniform per-liquid-cell volume correction source.
ReducedSystem assemble_reduced_system(const StaggeredGrid& grid, MaterialMap& map,
                                      const FaceGeometry& geom, const FaceField& u_star,
                                      const PhysicsParams& params,
                                      const FaceField* kappa = nullptr,
                                      double divergence_source = 0.0);

// Recovers the projected face velocities from (p, lambda). Fully solid and
// liquid-solid faces take the prescribed solid velocity; air-air faces are
// invalid (zeroed) and left to extrapolation.
void apply_pressure_gradient(const StaggeredGrid& grid, const MaterialMap& map,
                             const FaceGeometry& geom, const ReducedSystem& system,
                             const std::vector<double>& solution, const PhysicsParams& params,
                             const FaceField& u_star, const FaceField* kappa, FaceField& velocity,
                             FaceMask& valid);

// Net volumetric flux out of each bubble, split into the liquid-face part
// (the discrete constraint term) and the prescribed solid part.
struct BubbleFlux {
    double liquid = 0.0;
    double solid = 0.0;
    double net() const { return liquid + solid; }
};
std::vector<BubbleFlux> measure_bubble_fluxes(const StaggeredGrid& grid, const MaterialMap& map,
                                              const FaceGeometry& geom, const FaceField& velocity);

// Debug dump in Matrix Market coordinate (symmetric) / array format.
void write_matrix_market(const SparseSymMatrix& A, const std::vector<double>& rhs,
                         const std::string& matrix_path, const std::string& rhs_path);

} // namespace bubblesim

#endif
