#ifndef BUBBLESIM_PCG_H
#define BUBBLESIM_PCG_H

#include <stdexcept>
#include <string>
#include <vector>

#include "sparse.h"

namespace bubblesim {

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0; // ||b - Ax||_2 / ||b||_2, unpreconditioned
    bool converged = false;
    double wall_time = 0.0; // seconds
};

struct PcgOptions {
    double tolerance = 1e-5;
    int max_iterations = -1; // < 0 means 10 * n
    bool jacobi = true;      // diagonal preconditioner on/off
};

// Jacobi-preconditioned conjugate gradients. Convergence is decided on the
// true residual (recomputed every 50 iterations and at the stopping check),
// and every reduction uses a fixed summation order, so repeated solves are
// bitwise reproducible for any thread count.
SolveReport pcg_solve(const SparseSymMatrix& A, const std::vector<double>& b,
                      std::vector<double>& x, const PcgOptions& options = {});

} // namespace bubblesim

#endif
