#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "oracles.h"
#include "parallel.h"
#include "pcg.h"
#include "timeloop.h"

using namespace bubblesim;

namespace {

SparseSymMatrix identity(int n)
{
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)].emplace_back(i, 1.0);
    return SparseSymMatrix::from_rows(std::move(rows));
}

SparseSymMatrix random_spd(oracles::Rng& rng, int n)
{
    // A^T A + n I, assembled densely then stored sparsely.
    std::vector<std::vector<double>> raw(static_cast<size_t>(n), std::vector<double>(n));
    for (auto& row : raw)
        for (double& v : row) v = rng.uniform(-1.0, 1.0);

    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k)
                sum += raw[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                       raw[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (i == j) sum += n;
            rows[static_cast<size_t>(i)].emplace_back(j, sum);
        }
    return SparseSymMatrix::from_rows(std::move(rows));
}

SparseSymMatrix laplacian_1d(int n)
{
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        rows[static_cast<size_t>(i)].emplace_back(i, 2.0);
        if (i > 0) rows[static_cast<size_t>(i)].emplace_back(i - 1, -1.0);
        if (i + 1 < n) rows[static_cast<size_t>(i)].emplace_back(i + 1, -1.0);
    }
    return SparseSymMatrix::from_rows(std::move(rows));
}

} // namespace

TEST_CASE("matvec: identity, zero matrix, and dense oracle")
{
    oracles::Rng rng(5);
    std::vector<double> x(20);
    for (double& v : x) v = rng.uniform(-3.0, 3.0);

    CHECK(matvec(identity(20), x) == x);

    std::vector<std::vector<std::pair<int, double>>> empty_rows(20);
    SparseSymMatrix zero = SparseSymMatrix::from_rows(std::move(empty_rows));
    for (double v : matvec(zero, x)) CHECK(v == 0.0);

    SparseSymMatrix A = random_spd(rng, 20);
    std::vector<double> y = matvec(A, x);
    for (int i = 0; i < 20; ++i) {
        double expected = 0.0;
        for (int j = 0; j < 20; ++j) expected += A.entry(i, j) * x[static_cast<size_t>(j)];
        CHECK(y[static_cast<size_t>(i)] == doctest::Approx(expected).epsilon(1e-14));
    }

    std::vector<double> wrong(19, 0.0);
    CHECK_THROWS_AS(matvec(A, wrong), std::invalid_argument);
}

TEST_CASE("pcg_solve: identity converges in one iteration")
{
    std::vector<double> b{3.0, -1.0, 2.5, 0.25};
    std::vector<double> x;
    SolveReport report = pcg_solve(identity(4), b, x);
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    for (size_t i = 0; i < b.size(); ++i) CHECK(x[i] == doctest::Approx(b[i]));
}

TEST_CASE("pcg_solve: diagonal system")
{
    std::vector<std::vector<std::pair<int, double>>> rows(3);
    rows[0].emplace_back(0, 1.0);
    rows[1].emplace_back(1, 2.0);
    rows[2].emplace_back(2, 3.0);
    SparseSymMatrix A = SparseSymMatrix::from_rows(std::move(rows));
    std::vector<double> x;
    SolveReport report = pcg_solve(A, {1.0, 2.0, 3.0}, x);
    CHECK(report.converged);
    for (double v : x) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("pcg_solve: zero rhs returns zero in zero iterations")
{
    std::vector<double> x;
    SolveReport report = pcg_solve(identity(8), std::vector<double>(8, 0.0), x);
    CHECK(report.converged);
    CHECK(report.iterations == 0);
    for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("pcg_solve: random SPD systems match the dense oracle")
{
    oracles::Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        SparseSymMatrix A = random_spd(rng, 50);
        std::vector<double> b(50);
        for (double& v : b) v = rng.uniform(-2.0, 2.0);

        std::vector<double> x;
        SolveReport report = pcg_solve(A, b, x, {1e-12, -1, true});
        CHECK(report.converged);

        std::vector<double> expected = oracles::dense_solve(A, b);
        double err = 0.0;
        double norm = 0.0;
        for (int i = 0; i < 50; ++i) {
            err += (x[static_cast<size_t>(i)] - expected[static_cast<size_t>(i)]) *
                   (x[static_cast<size_t>(i)] - expected[static_cast<size_t>(i)]);
            norm += expected[static_cast<size_t>(i)] * expected[static_cast<size_t>(i)];
        }
        CHECK(std::sqrt(err / norm) < 1e-8);
    }
}

TEST_CASE("pcg_solve: non-positive diagonal raises a matrix error")
{
    std::vector<std::vector<std::pair<int, double>>> rows(2);
    rows[0].emplace_back(0, 1.0);
    rows[1].emplace_back(1, -2.0);
    SparseSymMatrix A = SparseSymMatrix::from_rows(std::move(rows));
    std::vector<double> x;
    CHECK_THROWS_AS(pcg_solve(A, {1.0, 1.0}, x), SolverError);
}

TEST_CASE("pcg_solve: NaN input raises a divergence error")
{
    std::vector<double> b{1.0, std::numeric_limits<double>::quiet_NaN()};
    std::vector<double> x;
    CHECK_THROWS_AS(pcg_solve(identity(2), b, x), SolverError);
}

TEST_CASE("pcg_solve: bitwise reproducible across runs and thread counts")
{
    oracles::Rng rng(7777);
    SparseSymMatrix A = random_spd(rng, 300);
    std::vector<double> b(300);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);

    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<double> x3;
    set_max_threads(1);
    pcg_solve(A, b, x1, {1e-9, -1, true});
    pcg_solve(A, b, x2, {1e-9, -1, true});
    set_max_threads(4);
    pcg_solve(A, b, x3, {1e-9, -1, true});
    set_max_threads(0);

    CHECK(std::memcmp(x1.data(), x2.data(), x1.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(x1.data(), x3.data(), x1.size() * sizeof(double)) == 0);
}

TEST_CASE("pcg_solve: 1D Laplacian converges within the 10n sanity bound")
{
    oracles::Rng rng(11);
    for (int n : {16, 64, 256}) {
        SparseSymMatrix A = laplacian_1d(n);
        std::vector<double> b(static_cast<size_t>(n));
        for (double& v : b) v = rng.uniform(-1.0, 1.0);
        std::vector<double> x;
        SolveReport report = pcg_solve(A, b, x, {1e-5, -1, true});
        CHECK(report.converged);
        CHECK(report.iterations <= 10 * n);
    }
}

TEST_CASE("Jacobi preconditioning is never worse than plain CG on scenario systems")
{
    ScenarioConfig config = build_preset("trapped_bubble");
    config.nx = 32;
    config.ny = 32;
    config.dx = 1.0 / 32.0;
    config.n_frames = 1;
    Simulation sim(config);
    sim.step_frame();

    const SparseSymMatrix& A = sim.last_system().A;
    const std::vector<double>& b = sim.last_rhs();
    REQUIRE(A.size() > 0);

    std::vector<double> x;
    SolveReport jacobi = pcg_solve(A, b, x, {1e-5, -1, true});
    SolveReport plain = pcg_solve(A, b, x, {1e-5, -1, false});
    CHECK(jacobi.converged);
    CHECK(plain.converged);
    CHECK(jacobi.iterations <= plain.iterations);
    MESSAGE("jacobi iterations: " << jacobi.iterations << ", plain: " << plain.iterations);
}
