#include "regions.h"

#include <algorithm>
#include <cmath>

namespace bubblesim {

int label_bubbles(MaterialMap& map)
{
    const int nx = map.label.nx();
    const int ny = map.label.ny();
    map.bubble_id.fill(-1);

    int next_id = 0;
    std::vector<int> stack;
    for (int start = 0; start < nx * ny; ++start) {
        if (map.label[start] != CellLabel::Air || map.bubble_id[start] >= 0) continue;
        map.bubble_id[start] = next_id;
        stack.assign(1, start);
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            int i = c % nx;
            int j = c / nx;
            auto visit = [&](int n) {
                if (map.label[n] == CellLabel::Air && map.bubble_id[n] < 0) {
                    map.bubble_id[n] = next_id;
                    stack.push_back(n);
                }
            };
            if (i > 0) visit(c - 1);
            if (i + 1 < nx) visit(c + 1);
            if (j > 0) visit(c - nx);
            if (j + 1 < ny) visit(c + nx);
        }
        ++next_id;
    }

    map.n_bubbles = next_id;
    map.active.assign(static_cast<size_t>(next_id), 1);
    map.liquid_area.assign(static_cast<size_t>(next_id), 0.0);
    return next_id;
}

std::vector<EnclosureGroup> find_enclosure_groups(const MaterialMap& map)
{
    const int nx = map.label.nx();
    const int ny = map.label.ny();

    std::vector<int> group_of(static_cast<size_t>(nx) * ny, -1);
    std::vector<EnclosureGroup> groups;
    std::vector<int> stack;

    for (int start = 0; start < nx * ny; ++start) {
        if (map.label[start] == CellLabel::Solid || group_of[start] >= 0) continue;
        int id = static_cast<int>(groups.size());
        groups.emplace_back();
        EnclosureGroup& group = groups.back();
        group_of[start] = id;
        stack.assign(1, start);
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            group.cells.push_back(c);
            int i = c % nx;
            int j = c / nx;
            if ((i == 0 && map.open_sides.left) || (i == nx - 1 && map.open_sides.right) ||
                (j == 0 && map.open_sides.bottom) || (j == ny - 1 && map.open_sides.top))
                group.enclosed = false;
            int b = map.bubble_id[c];
            if (b >= 0 &&
                (group.bubbles.empty() ||
                 std::find(group.bubbles.begin(), group.bubbles.end(), b) == group.bubbles.end()))
                group.bubbles.push_back(b);
            auto visit = [&](int n) {
                if (map.label[n] != CellLabel::Solid && group_of[n] < 0) {
                    group_of[n] = id;
                    stack.push_back(n);
                }
            };
            if (i > 0) visit(c - 1);
            if (i + 1 < nx) visit(c + 1);
            if (j > 0) visit(c - nx);
            if (j + 1 < ny) visit(c + nx);
        }
        std::sort(group.bubbles.begin(), group.bubbles.end());
    }
    return groups;
}

void bubble_liquid_area(const StaggeredGrid& grid, MaterialMap& map, const FaceGeometry& geom)
{
    map.liquid_area.assign(static_cast<size_t>(map.n_bubbles), 0.0);
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;

    auto add_pair = [&](CellLabel la, CellLabel lb, int ca, int cb, double w) {
        int bubble = -1;
        if (la == CellLabel::Liquid && lb == CellLabel::Air)
            bubble = map.bubble_id[cb];
        else if (la == CellLabel::Air && lb == CellLabel::Liquid)
            bubble = map.bubble_id[ca];
        if (bubble >= 0) map.liquid_area[static_cast<size_t>(bubble)] += w * dx;
    };

    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i)
            add_pair(map.label(i - 1, j), map.label(i, j), map.label.flatten(i - 1, j),
                     map.label.flatten(i, j), geom.w.u(i, j));
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            add_pair(map.label(i, j - 1), map.label(i, j), map.label.flatten(i, j - 1),
                     map.label.flatten(i, j), geom.w.v(i, j));
}

void prune_constraints(const StaggeredGrid& grid, MaterialMap& map,
                       const std::vector<EnclosureGroup>& groups,
                       const std::vector<Vec2>& freesurface_seeds)
{
    if (map.n_bubbles == 0) return;
    const int nx = map.label.nx();
    const int ny = map.label.ny();

    // Config-declared free surfaces: any air region holding a seed point.
    for (const Vec2& seed : freesurface_seeds) {
        int i = static_cast<int>(std::floor((seed.x - grid.origin.x) / grid.dx));
        int j = static_cast<int>(std::floor((seed.y - grid.origin.y) / grid.dx));
        i = std::clamp(i, 0, nx - 1);
        j = std::clamp(j, 0, ny - 1);
        int b = map.bubble_id(i, j);
        if (b >= 0) map.active[static_cast<size_t>(b)] = 0;
    }

    // Air regions reaching an open domain side are exterior free surfaces.
    if (map.open_sides.any()) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                bool boundary = (i == 0 && map.open_sides.left) ||
                                (i == nx - 1 && map.open_sides.right) ||
                                (j == 0 && map.open_sides.bottom) ||
                                (j == ny - 1 && map.open_sides.top);
                int b = map.bubble_id(i, j);
                if (boundary && b >= 0) map.active[static_cast<size_t>(b)] = 0;
            }
    }

    // One redundant constraint per fully enclosed group: with every bubble in
    // the group still constrained the system has the constant null vector, so
    // drop the bubble with the largest liquid surface area. A group that
    // already lost a constraint (seed or open side) keeps the rest.
    for (const EnclosureGroup& group : groups) {
        if (!group.enclosed || group.bubbles.empty()) continue;
        bool all_active = true;
        for (int b : group.bubbles)
            if (!map.active[static_cast<size_t>(b)]) {
                all_active = false;
                break;
            }
        if (!all_active) continue;
        int widest = group.bubbles.front();
        for (int b : group.bubbles)
            if (map.liquid_area[static_cast<size_t>(b)] >
                map.liquid_area[static_cast<size_t>(widest)])
                widest = b;
        map.active[static_cast<size_t>(widest)] = 0;
    }
}

} // namespace bubblesim
