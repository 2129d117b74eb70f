#include "pcg.h"

#include <chrono>
#include <cmath>

#include "parallel.h"

namespace bubblesim {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    return chunked_sum(static_cast<int>(a.size()),
                       [&](int i) { return a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)]; });
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace

SolveReport pcg_solve(const SparseSymMatrix& A, const std::vector<double>& b,
                      std::vector<double>& x, const PcgOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    const int n = A.size();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("pcg_solve: rhs dimension mismatch");

    SolveReport report;
    x.assign(static_cast<size_t>(n), 0.0);
    if (n == 0) {
        report.converged = true;
        report.wall_time = elapsed();
        return report;
    }

    std::vector<double> diag = A.diagonal();
    for (int i = 0; i < n; ++i)
        if (!(diag[static_cast<size_t>(i)] > 0.0))
            throw SolverError("pcg_solve: non-positive diagonal entry at row " + std::to_string(i));

    const double b_norm = norm(b);
    if (b_norm == 0.0) {
        report.converged = true;
        report.wall_time = elapsed();
        return report;
    }

    const double target = options.tolerance * b_norm;
    const int max_iter = options.max_iterations >= 0 ? options.max_iterations : 10 * n;

    std::vector<double> r = b;
    std::vector<double> z(static_cast<size_t>(n));
    std::vector<double> p(static_cast<size_t>(n));
    std::vector<double> Ap(static_cast<size_t>(n));
    std::vector<double> scratch(static_cast<size_t>(n));

    auto apply_preconditioner = [&]() {
        if (options.jacobi) {
            parallel_for(n, [&](int i) {
                z[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] / diag[static_cast<size_t>(i)];
            });
        } else {
            z = r;
        }
    };
    auto true_residual = [&]() {
        A.multiply(x, scratch);
        parallel_for(n, [&](int i) {
            r[static_cast<size_t>(i)] = b[static_cast<size_t>(i)] - scratch[static_cast<size_t>(i)];
        });
    };

    apply_preconditioner();
    p = z;
    double rz = dot(r, z);

    double residual_norm = b_norm;
    int iter = 0;
    while (iter < max_iter) {
        ++iter;
        A.multiply(p, Ap);
        double pAp = dot(p, Ap);
        double alpha = rz / pAp;
        if (!std::isfinite(alpha)) throw SolverError("pcg_solve: divergence (non-finite step)");

        parallel_for(n, [&](int i) { x[static_cast<size_t>(i)] += alpha * p[static_cast<size_t>(i)]; });

        // Guard the recurrence against drift with a periodic true residual.
        if (iter % 50 == 0)
            true_residual();
        else
            parallel_for(n, [&](int i) {
                r[static_cast<size_t>(i)] -= alpha * Ap[static_cast<size_t>(i)];
            });

        residual_norm = norm(r);
        if (!std::isfinite(residual_norm)) throw SolverError("pcg_solve: divergence (NaN residual)");

        if (residual_norm <= target) {
            true_residual();
            residual_norm = norm(r);
            if (residual_norm <= target) break;
        }

        apply_preconditioner();
        double rz_next = dot(r, z);
        double beta = rz_next / rz;
        if (!std::isfinite(beta)) throw SolverError("pcg_solve: divergence (non-finite beta)");
        parallel_for(n, [&](int i) {
            p[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + beta * p[static_cast<size_t>(i)];
        });
        rz = rz_next;
    }

    report.iterations = iter;
    report.relative_residual = residual_norm / b_norm;
    report.converged = residual_norm <= target;
    report.wall_time = elapsed();
    return report;
}

} // namespace bubblesim
