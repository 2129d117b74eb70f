#ifndef BUBBLESIM_TEST_ORACLES_H
#define BUBBLESIM_TEST_ORACLES_H

#include <cstdint>
#include <vector>

#include "materials.h"
#include "projection.h"
#include "sparse.h"

// Independent reference implementations used to validate the solver. These
// deliberately re-derive everything from the raw inputs with simple dense
// logic instead of calling the production assembly.
namespace oracles {

using namespace bubblesim;

// Dense solve of the full indefinite KKT system over face velocities,
// liquid pressures, and active bubble multipliers.
struct DenseKktResult {
    bool solvable = false;
    std::vector<double> pressure_lambda; // production row order
    FaceField velocity;                  // recovered on DOF faces, 0 elsewhere
    FaceMask dof;                        // which faces carried unknowns
    double condition_estimate = 0.0;     // min singular value of the reduced block
};

DenseKktResult solve_dense_kkt(const StaggeredGrid& grid, const MaterialMap& map,
                               const FaceGeometry& geom, const FaceField& u_star,
                               const PhysicsParams& params, const FaceField* kappa,
                               const CellField<int32_t>& pressure_row,
                               const std::vector<int32_t>& bubble_row, int n_unknowns);

// Dense direct solve of the assembled sparse system (LU).
std::vector<double> dense_solve(const SparseSymMatrix& A, const std::vector<double>& rhs);

// Smallest eigenvalue of the assembled (symmetric) system.
double smallest_eigenvalue(const SparseSymMatrix& A);

// Brute-force connected components of air cells (union-find, face adjacency),
// relabelled to row-major discovery order.
std::vector<int> connected_air_components(const CellField<CellLabel>& labels);

// Plain free-surface pressure assembly: Poisson + ghost fluid, no bubble
// machinery at all. Rows follow pressure_row ordering.
struct FreeSurfaceSystem {
    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<double> rhs;
};
FreeSurfaceSystem assemble_free_surface(const StaggeredGrid& grid, const MaterialMap& map,
                                        const FaceGeometry& geom, const FaceField& u_star,
                                        const PhysicsParams& params,
                                        const CellField<int32_t>& pressure_row, int n_pressure);

// Deterministic pseudo-random scene for oracle comparisons.
struct RandomScene {
    StaggeredGrid grid;
    MaterialMap map;
    FaceGeometry geom;
    FaceField u_star;
    CellField<double> phi_liquid;
};
RandomScene random_scene(uint64_t seed, int nx, int ny, bool moving_solids, bool with_tension);

// Small deterministic generator shared by the property tests.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi); // inclusive

private:
    uint64_t state_;
};

} // namespace oracles

#endif
