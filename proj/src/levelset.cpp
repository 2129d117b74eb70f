#include "levelset.h"

#include <algorithm>
#include <cmath>

#include "parallel.h"

namespace bubblesim {

void LevelSetField::sample(const StaggeredGrid& grid, const std::function<double(Vec2)>& sdf)
{
    phi = CellField<double>(grid.nx, grid.ny, 0.0);
    const int nx = grid.nx;
    parallel_for(grid.cell_count(), [&](int c) {
        int i = c % nx;
        int j = c / nx;
        phi[c] = sdf(grid.cell_center(i, j));
    });
}

namespace {

// Eikonal update from the smaller |phi| neighbour per axis.
double eikonal(double a, double b, double dx)
{
    if (a > b) std::swap(a, b);
    if (b - a >= dx) return a + dx;
    double disc = 2.0 * dx * dx - (b - a) * (b - a);
    return 0.5 * (a + b + std::sqrt(disc));
}

} // namespace

bool redistance(const StaggeredGrid& grid, CellField<double>& phi)
{
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;
    const double big = 1e30;

    bool has_negative = false;
    bool has_positive = false;
    for (int c = 0; c < phi.count(); ++c) {
        if (phi[c] < 0.0)
            has_negative = true;
        else
            has_positive = true;
    }
    if (!has_negative || !has_positive) return false;

    // Pin cells next to the interface at their interpolated crossing
    // distances; everything else restarts from "far".
    CellField<double> dist(nx, ny, big);
    CellField<uint8_t> frozen(nx, ny, 0);

    parallel_for(nx * ny, [&](int c) {
        int i = c % nx;
        int j = c / nx;
        double here = phi(i, j);
        double nearest = big;
        auto visit = [&](int ni, int nj) {
            double there = phi(ni, nj);
            if ((here < 0.0) == (there < 0.0)) return;
            double denom = here - there;
            double theta = denom != 0.0 ? here / denom : 0.5;
            nearest = std::min(nearest, std::fabs(theta) * dx);
        };
        if (i > 0) visit(i - 1, j);
        if (i + 1 < nx) visit(i + 1, j);
        if (j > 0) visit(i, j - 1);
        if (j + 1 < ny) visit(i, j + 1);
        if (nearest < big) {
            dist(i, j) = nearest;
            frozen(i, j) = 1;
        }
    });

    auto sweep = [&](int i0, int i1, int istep, int j0, int j1, int jstep) {
        for (int j = j0; j != j1; j += jstep) {
            for (int i = i0; i != i1; i += istep) {
                if (frozen(i, j)) continue;
                double ax = big;
                if (i > 0) ax = std::min(ax, dist(i - 1, j));
                if (i + 1 < nx) ax = std::min(ax, dist(i + 1, j));
                double ay = big;
                if (j > 0) ay = std::min(ay, dist(i, j - 1));
                if (j + 1 < ny) ay = std::min(ay, dist(i, j + 1));
                if (ax >= big && ay >= big) continue;
                double updated = (ax >= big)   ? ay + dx
                                 : (ay >= big) ? ax + dx
                                               : eikonal(ax, ay, dx);
                if (updated < dist(i, j)) dist(i, j) = updated;
            }
        }
    };

    for (int round = 0; round < 2; ++round) {
        sweep(0, nx, 1, 0, ny, 1);
        sweep(nx - 1, -1, -1, 0, ny, 1);
        sweep(nx - 1, -1, -1, ny - 1, -1, -1);
        sweep(0, nx, 1, ny - 1, -1, -1);
    }

    parallel_for(nx * ny, [&](int c) {
        phi[c] = phi[c] < 0.0 ? -dist[c] : dist[c];
    });
    return true;
}

double liquid_volume(const StaggeredGrid& grid, const CellField<double>& phi)
{
    const double dx = grid.dx;
    double fractions = chunked_sum(phi.count(), [&](int c) {
        double f = 0.5 - phi[c] / (2.0 * dx);
        return std::clamp(f, 0.0, 1.0);
    });
    return fractions * dx * dx;
}

} // namespace bubblesim
