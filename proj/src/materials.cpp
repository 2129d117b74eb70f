#include "materials.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.h"

namespace bubblesim {

void classify_cells(const StaggeredGrid& grid, const LevelSetField& phi_liquid,
                    const LevelSetField& phi_solid, MaterialMap& map)
{
    if (phi_liquid.phi.nx() != grid.nx || phi_liquid.phi.ny() != grid.ny ||
        phi_solid.phi.nx() != grid.nx || phi_solid.phi.ny() != grid.ny)
        throw std::invalid_argument("classify_cells: level set dimensions do not match grid");

    map.label = CellField<CellLabel>(grid.nx, grid.ny, CellLabel::Air);
    map.bubble_id = CellField<int32_t>(grid.nx, grid.ny, -1);
    map.n_bubbles = 0;
    map.active.clear();
    map.liquid_area.clear();

    const CellField<double>& ls = phi_liquid.phi;
    const CellField<double>& ss = phi_solid.phi;
    parallel_for(grid.cell_count(), [&](int c) {
        if (ss[c] < 0.0)
            map.label[c] = CellLabel::Solid;
        else if (ls[c] < 0.0)
            map.label[c] = CellLabel::Liquid;
        else
            map.label[c] = CellLabel::Air;
    });
}

double face_fraction(double phi_solid_end1, double phi_solid_end2)
{
    const double a = phi_solid_end1;
    const double b = phi_solid_end2;
    if (a >= 0.0 && b >= 0.0) return 1.0;
    if (a < 0.0 && b < 0.0) return 0.0;
    // One endpoint inside: the linear interpolant crosses zero once.
    double outside = a >= 0.0 ? a / (a - b) : b / (b - a);
    return std::clamp(outside, 0.0, 1.0);
}

double ghost_theta(double phi_liquid_cell, double phi_air_cell)
{
    if (!(phi_liquid_cell < 0.0) || phi_air_cell < 0.0) return 1.0;
    double denom = phi_liquid_cell - phi_air_cell;
    if (denom == 0.0) return 1.0;
    return std::clamp(phi_liquid_cell / denom, kThetaMin, 1.0);
}

FaceGeometry compute_face_geometry(const StaggeredGrid& grid, const PrimitiveSet& solids,
                                   double t_eval, double t_prev, const MaterialMap& map,
                                   const CellField<double>& phi_liquid)
{
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;

    FaceGeometry geom;
    geom.w = FaceField(nx, ny, 1.0);
    geom.theta = FaceField(nx, ny, 1.0);
    geom.solid_u = FaceField(nx, ny, 0.0);

    auto node_phi = [&](int i, int j) { return solids.sdf(grid.node(i, j), t_eval); };

    const bool moving = solids.has_motion();

    // x-normal faces
    parallel_for((nx + 1) * ny, [&](int f) {
        int i = f % (nx + 1);
        int j = f / (nx + 1);

        double w;
        if (i == 0)
            w = map.open_sides.left ? face_fraction(node_phi(i, j), node_phi(i, j + 1)) : 0.0;
        else if (i == nx)
            w = map.open_sides.right ? face_fraction(node_phi(i, j), node_phi(i, j + 1)) : 0.0;
        else
            w = face_fraction(node_phi(i, j), node_phi(i, j + 1));
        geom.w.u(i, j) = w;

        bool solid_neighbor = (i > 0 && map.label(i - 1, j) == CellLabel::Solid) ||
                              (i < nx && map.label(i, j) == CellLabel::Solid);
        if (moving && (w < 1.0 || solid_neighbor))
            geom.solid_u.u(i, j) = solids.velocity_at(grid.u_face_center(i, j), t_prev, t_eval).x;

        // GFM fraction on liquid-air pairs, oriented from the liquid side.
        if (i > 0 && i < nx) {
            CellLabel la = map.label(i - 1, j);
            CellLabel lb = map.label(i, j);
            if (la == CellLabel::Liquid && lb == CellLabel::Air)
                geom.theta.u(i, j) = ghost_theta(phi_liquid(i - 1, j), phi_liquid(i, j));
            else if (la == CellLabel::Air && lb == CellLabel::Liquid)
                geom.theta.u(i, j) = ghost_theta(phi_liquid(i, j), phi_liquid(i - 1, j));
        } else if ((i == 0 && map.open_sides.left && map.label(0, j) == CellLabel::Liquid) ||
                   (i == nx && map.open_sides.right && map.label(nx - 1, j) == CellLabel::Liquid)) {
            // Virtual air beyond an open side, one cell away at unit gradient.
            double pl = phi_liquid(i == 0 ? 0 : nx - 1, j);
            geom.theta.u(i, j) = ghost_theta(pl, pl + dx);
        }
    });

    // y-normal faces
    parallel_for(nx * (ny + 1), [&](int f) {
        int i = f % nx;
        int j = f / nx;

        double w;
        if (j == 0)
            w = map.open_sides.bottom ? face_fraction(node_phi(i, j), node_phi(i + 1, j)) : 0.0;
        else if (j == ny)
            w = map.open_sides.top ? face_fraction(node_phi(i, j), node_phi(i + 1, j)) : 0.0;
        else
            w = face_fraction(node_phi(i, j), node_phi(i + 1, j));
        geom.w.v(i, j) = w;

        bool solid_neighbor = (j > 0 && map.label(i, j - 1) == CellLabel::Solid) ||
                              (j < ny && map.label(i, j) == CellLabel::Solid);
        if (moving && (w < 1.0 || solid_neighbor))
            geom.solid_u.v(i, j) = solids.velocity_at(grid.v_face_center(i, j), t_prev, t_eval).y;

        if (j > 0 && j < ny) {
            CellLabel la = map.label(i, j - 1);
            CellLabel lb = map.label(i, j);
            if (la == CellLabel::Liquid && lb == CellLabel::Air)
                geom.theta.v(i, j) = ghost_theta(phi_liquid(i, j - 1), phi_liquid(i, j));
            else if (la == CellLabel::Air && lb == CellLabel::Liquid)
                geom.theta.v(i, j) = ghost_theta(phi_liquid(i, j), phi_liquid(i, j - 1));
        } else if ((j == 0 && map.open_sides.bottom && map.label(i, 0) == CellLabel::Liquid) ||
                   (j == ny && map.open_sides.top && map.label(i, ny - 1) == CellLabel::Liquid)) {
            double pl = phi_liquid(i, j == 0 ? 0 : ny - 1);
            geom.theta.v(i, j) = ghost_theta(pl, pl + dx);
        }
    });

    return geom;
}

} // namespace bubblesim
