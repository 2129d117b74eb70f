#ifndef BUBBLESIM_REGIONS_H
#define BUBBLESIM_REGIONS_H

#include <vector>

#include "materials.h"

namespace bubblesim {

// A connected non-solid volume (liquid + air) bounded by solids and closed
// domain walls; enclosed when it touches no open boundary side.
struct EnclosureGroup {
    std::vector<int> cells;   // flat cell indices
    std::vector<int> bubbles; // bubble ids inside the group
    bool enclosed = true;
};

// Connected components of air cells under face adjacency, ids assigned in
// row-major discovery order. Fills bubble_id / n_bubbles and resets the
// active set to all-on. Returns the bubble count.
int label_bubbles(MaterialMap& map);

std::vector<EnclosureGroup> find_enclosure_groups(const MaterialMap& map);

// Sum of w * dx over each bubble's liquid-air faces.
void bubble_liquid_area(const StaggeredGrid& grid, MaterialMap& map, const FaceGeometry& geom);

// Deactivates config-declared free-surface regions (any air region holding a
// seed point), air regions touching an open domain side, and one redundant
// constraint per fully enclosed group per the n-1 rule.
void prune_constraints(const StaggeredGrid& grid, MaterialMap& map,
                       const std::vector<EnclosureGroup>& groups,
                       const std::vector<Vec2>& freesurface_seeds);

} // namespace bubblesim

#endif
