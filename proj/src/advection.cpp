#include "advection.h"

#include <algorithm>
#include <cmath>

#include "parallel.h"

namespace bubblesim {

namespace {

struct Weights {
    int i0, j0, i1, j1;
    double fx, fy;
};

Weights lattice_weights(double x, double y, int last_i, int last_j)
{
    x = std::clamp(x, 0.0, static_cast<double>(last_i));
    y = std::clamp(y, 0.0, static_cast<double>(last_j));
    Weights w;
    w.i0 = std::min(static_cast<int>(x), last_i - 1 >= 0 ? last_i - 1 : 0);
    w.j0 = std::min(static_cast<int>(y), last_j - 1 >= 0 ? last_j - 1 : 0);
    w.i1 = std::min(w.i0 + 1, last_i);
    w.j1 = std::min(w.j0 + 1, last_j);
    w.fx = x - w.i0;
    w.fy = y - w.j0;
    return w;
}

template <class Get>
double bilerp(const Weights& w, const Get& get)
{
    double v00 = get(w.i0, w.j0);
    double v10 = get(w.i1, w.j0);
    double v01 = get(w.i0, w.j1);
    double v11 = get(w.i1, w.j1);
    double bottom = v00 + w.fx * (v10 - v00);
    double top = v01 + w.fx * (v11 - v01);
    return bottom + w.fy * (top - bottom);
}

} // namespace

double sample_u(const StaggeredGrid& grid, const FaceField& vel, Vec2 p)
{
    double x = (p.x - grid.origin.x) / grid.dx;
    double y = (p.y - grid.origin.y) / grid.dx - 0.5;
    Weights w = lattice_weights(x, y, grid.nx, grid.ny - 1);
    return bilerp(w, [&](int i, int j) { return vel.u(i, j); });
}

double sample_v(const StaggeredGrid& grid, const FaceField& vel, Vec2 p)
{
    double x = (p.x - grid.origin.x) / grid.dx - 0.5;
    double y = (p.y - grid.origin.y) / grid.dx;
    Weights w = lattice_weights(x, y, grid.nx - 1, grid.ny);
    return bilerp(w, [&](int i, int j) { return vel.v(i, j); });
}

Vec2 sample_velocity(const StaggeredGrid& grid, const FaceField& vel, Vec2 p)
{
    return {sample_u(grid, vel, p), sample_v(grid, vel, p)};
}

double sample_cell(const StaggeredGrid& grid, const CellField<double>& field, Vec2 p)
{
    double x = (p.x - grid.origin.x) / grid.dx - 0.5;
    double y = (p.y - grid.origin.y) / grid.dx - 0.5;
    Weights w = lattice_weights(x, y, grid.nx - 1, grid.ny - 1);
    return bilerp(w, [&](int i, int j) { return field(i, j); });
}

Vec2 backtrace(const StaggeredGrid& grid, const FaceField& vel, Vec2 p, double dt)
{
    Vec2 hi = grid.max_corner();
    auto clamp_point = [&](Vec2 q) {
        return Vec2{std::clamp(q.x, grid.origin.x, hi.x), std::clamp(q.y, grid.origin.y, hi.y)};
    };
    Vec2 mid = clamp_point(p - 0.5 * dt * sample_velocity(grid, vel, p));
    return clamp_point(p - dt * sample_velocity(grid, vel, mid));
}

CellField<double> advect_cell_field(const StaggeredGrid& grid, const CellField<double>& field,
                                    const FaceField& vel, double dt)
{
    CellField<double> out(grid.nx, grid.ny, 0.0);
    parallel_for(grid.cell_count(), [&](int c) {
        int i = c % grid.nx;
        int j = c / grid.nx;
        out[c] = sample_cell(grid, field, backtrace(grid, vel, grid.cell_center(i, j), dt));
    });
    return out;
}

FaceField advect_face_field(const StaggeredGrid& grid, const FaceField& field,
                            const FaceField& vel, double dt)
{
    FaceField out(grid.nx, grid.ny, 0.0);
    parallel_for(field.u_count(), [&](int f) {
        int i = f % (grid.nx + 1);
        int j = f / (grid.nx + 1);
        out.flat(f) = sample_u(grid, field, backtrace(grid, vel, grid.u_face_center(i, j), dt));
    });
    parallel_for(field.v_count(), [&](int f) {
        int i = f % grid.nx;
        int j = f / grid.nx;
        out.flat(field.u_count() + f) =
            sample_v(grid, field, backtrace(grid, vel, grid.v_face_center(i, j), dt));
    });
    return out;
}

void extrapolate_velocity(const StaggeredGrid& grid, FaceField& vel, FaceMask& valid, int layers)
{
    const int nx = grid.nx;
    const int ny = grid.ny;

    FaceField next_vel = vel;
    FaceMask next_valid = valid;

    auto average_layer = [&](int count, auto index, auto neighbours) {
        parallel_for(count, [&](int f) {
            int flat = index(f);
            if (valid.flat(flat)) return;
            double sum = 0.0;
            int found = 0;
            neighbours(f, [&](int nflat) {
                if (valid.flat(nflat)) {
                    sum += vel.flat(nflat);
                    ++found;
                }
            });
            if (found > 0) {
                next_vel.flat(flat) = sum / found;
                next_valid.flat(flat) = 1;
            }
        });
    };

    for (int layer = 0; layer < layers; ++layer) {
        average_layer(
            (nx + 1) * ny, [&](int f) { return f; },
            [&](int f, auto&& visit) {
                int i = f % (nx + 1);
                int j = f / (nx + 1);
                if (i > 0) visit(vel.u_index(i - 1, j));
                if (i < nx) visit(vel.u_index(i + 1, j));
                if (j > 0) visit(vel.u_index(i, j - 1));
                if (j + 1 < ny) visit(vel.u_index(i, j + 1));
            });
        average_layer(
            nx * (ny + 1), [&](int f) { return vel.u_count() + f; },
            [&](int f, auto&& visit) {
                int i = f % nx;
                int j = f / nx;
                if (i > 0) visit(vel.v_index(i - 1, j));
                if (i + 1 < nx) visit(vel.v_index(i + 1, j));
                if (j > 0) visit(vel.v_index(i, j - 1));
                if (j < ny) visit(vel.v_index(i, j + 1));
            });
        std::swap(vel.data(), next_vel.data());
        for (int f = 0; f < valid.count(); ++f) valid.flat(f) = next_valid.flat(f);
        next_vel = vel;
    }

    parallel_for(vel.count(), [&](int f) {
        if (!valid.flat(f)) vel.flat(f) = 0.0;
    });
}

} // namespace bubblesim
