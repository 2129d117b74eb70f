#ifndef BUBBLESIM_TEST_HELPERS_H
#define BUBBLESIM_TEST_HELPERS_H

#include <string>
#include <vector>

#include "materials.h"

namespace testhelpers {

using namespace bubblesim;

// Builds a label map from rows written top to bottom with 'S', 'A', 'L'.
inline MaterialMap map_from_rows(const std::vector<std::string>& rows)
{
    const int ny = static_cast<int>(rows.size());
    const int nx = static_cast<int>(rows.front().size());
    MaterialMap map;
    map.label = CellField<CellLabel>(nx, ny, CellLabel::Air);
    map.bubble_id = CellField<int32_t>(nx, ny, -1);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            char c = rows[static_cast<size_t>(ny - 1 - j)][static_cast<size_t>(i)];
            map.label(i, j) = c == 'S'   ? CellLabel::Solid
                              : c == 'L' ? CellLabel::Liquid
                                         : CellLabel::Air;
        }
    return map;
}

// Closed-box face geometry: unit fractions inside, solid boundary faces.
inline FaceGeometry closed_box_geometry(const StaggeredGrid& grid)
{
    FaceGeometry geom;
    geom.w = FaceField(grid.nx, grid.ny, 1.0);
    geom.theta = FaceField(grid.nx, grid.ny, 1.0);
    geom.solid_u = FaceField(grid.nx, grid.ny, 0.0);
    for (int j = 0; j < grid.ny; ++j) {
        geom.w.u(0, j) = 0.0;
        geom.w.u(grid.nx, j) = 0.0;
    }
    for (int i = 0; i < grid.nx; ++i) {
        geom.w.v(i, 0) = 0.0;
        geom.w.v(i, grid.ny) = 0.0;
    }
    return geom;
}

} // namespace testhelpers

#endif
