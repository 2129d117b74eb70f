#include <doctest.h>

#include "helpers.h"
#include "oracles.h"
#include "regions.h"

using namespace bubblesim;
using testhelpers::closed_box_geometry;
using testhelpers::map_from_rows;

TEST_CASE("label_bubbles: no air means no bubbles")
{
    MaterialMap map = map_from_rows({"LLL", "LLL", "LLL"});
    CHECK(label_bubbles(map) == 0);
}

TEST_CASE("label_bubbles: diagonal adjacency does not connect")
{
    MaterialMap map = map_from_rows({"ALL", "LAL", "LLL"});
    CHECK(label_bubbles(map) == 2);
    CHECK(map.bubble_id(0, 2) != map.bubble_id(1, 1));
}

TEST_CASE("label_bubbles: nested regions get distinct ids")
{
    // Air annulus around a liquid ring that encloses an inner air hole.
    MaterialMap map = map_from_rows({
        "AAAAAAA",
        "ALLLLLA",
        "ALAAALA",
        "ALALALA",
        "ALAAALA",
        "ALLLLLA",
        "AAAAAAA",
    });
    int n = label_bubbles(map);

    std::vector<int> oracle = oracles::connected_air_components(map.label);
    int oracle_count = 0;
    for (int id : oracle) oracle_count = std::max(oracle_count, id + 1);
    CHECK(n == oracle_count);
    for (int c = 0; c < map.label.count(); ++c)
        CHECK(map.bubble_id[c] == oracle[static_cast<size_t>(c)]);

    // Outer annulus, inner ring, and the single enclosed cell are distinct.
    CHECK(map.bubble_id(0, 0) != map.bubble_id(2, 2));
    CHECK(map.bubble_id(3, 3) != map.bubble_id(2, 2));
    CHECK(map.bubble_id(3, 3) >= 0);
}

TEST_CASE("label_bubbles matches the union-find oracle on random maps")
{
    oracles::Rng rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
        MaterialMap map;
        map.label = CellField<CellLabel>(16, 16, CellLabel::Liquid);
        map.bubble_id = CellField<int32_t>(16, 16, -1);
        for (int c = 0; c < 256; ++c) {
            double r = rng.uniform(0.0, 1.0);
            map.label[c] = r < 0.45   ? CellLabel::Air
                           : r < 0.75 ? CellLabel::Liquid
                                      : CellLabel::Solid;
        }
        label_bubbles(map);
        std::vector<int> oracle = oracles::connected_air_components(map.label);
        for (int c = 0; c < 256; ++c) CHECK(map.bubble_id[c] == oracle[static_cast<size_t>(c)]);
    }
}

TEST_CASE("find_enclosure_groups: pool with one bubble is a single enclosed group")
{
    MaterialMap map = map_from_rows({"AAA", "LAL", "LLL"});
    label_bubbles(map);
    auto groups = find_enclosure_groups(map);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].enclosed);
    CHECK(groups[0].cells.size() == 9);
    CHECK(groups[0].bubbles.size() == 1);
}

TEST_CASE("find_enclosure_groups: a full solid wall splits the box")
{
    MaterialMap map = map_from_rows({
        "LLSAA",
        "LLSAA",
        "LLSAA",
    });
    label_bubbles(map);
    auto groups = find_enclosure_groups(map);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].enclosed);
    CHECK(groups[1].enclosed);
}

TEST_CASE("find_enclosure_groups: open top marks touching groups as not enclosed")
{
    MaterialMap map = map_from_rows({
        "AASLL",
        "AASLL",
        "AASLL",
    });
    map.open_sides.top = true;
    label_bubbles(map);
    auto groups = find_enclosure_groups(map);
    REQUIRE(groups.size() == 2);
    for (const EnclosureGroup& group : groups) CHECK_FALSE(group.enclosed);

    map.open_sides.top = false;
    map.open_sides.left = true;
    groups = find_enclosure_groups(map);
    bool saw_open = false;
    bool saw_closed = false;
    for (const EnclosureGroup& group : groups) {
        if (group.enclosed)
            saw_closed = true;
        else
            saw_open = true;
    }
    CHECK(saw_open);
    CHECK(saw_closed);
}

TEST_CASE("prune_constraints: one enclosed bubble loses its constraint")
{
    StaggeredGrid grid(3, 3, 1.0);
    MaterialMap map = map_from_rows({"AAA", "LAL", "LLL"});
    label_bubbles(map);
    FaceGeometry geom = closed_box_geometry(grid);
    bubble_liquid_area(grid, map, geom);
    prune_constraints(grid, map, find_enclosure_groups(map), {});
    CHECK(map.active[0] == 0);
}

TEST_CASE("prune_constraints: the larger liquid area is dropped, smaller kept")
{
    StaggeredGrid grid(3, 3, 1.0);
    MaterialMap map;
    map.label = CellField<CellLabel>(3, 3, CellLabel::Liquid);
    map.bubble_id = CellField<int32_t>(3, 3, -1);
    map.n_bubbles = 2;
    map.active = {1, 1};
    map.liquid_area = {10.0, 4.0};

    EnclosureGroup group;
    group.bubbles = {0, 1};
    group.enclosed = true;

    prune_constraints(grid, map, {group}, {});
    CHECK(map.active[0] == 0);
    CHECK(map.active[1] == 1);

    // Equal areas tie-break to the lowest id.
    map.active = {1, 1};
    map.liquid_area = {4.0, 4.0};
    prune_constraints(grid, map, {group}, {});
    CHECK(map.active[0] == 0);
    CHECK(map.active[1] == 1);
}

TEST_CASE("prune_constraints: a free-surface seed stands in for the dropped constraint")
{
    StaggeredGrid grid(3, 3, 1.0);
    MaterialMap map = map_from_rows({
        "ALA",
        "LLL",
        "LLL",
    });
    label_bubbles(map);
    REQUIRE(map.n_bubbles == 2);
    FaceGeometry geom = closed_box_geometry(grid);
    bubble_liquid_area(grid, map, geom);

    // Seed marks the left bubble; the right one must stay constrained.
    prune_constraints(grid, map, find_enclosure_groups(map), {Vec2{0.5, 2.5}});
    CHECK(map.active[map.bubble_id(0, 2)] == 0);
    CHECK(map.active[map.bubble_id(2, 2)] == 1);
}

TEST_CASE("prune_constraints: open-top exterior air is free, submerged bubble constrained")
{
    StaggeredGrid grid(3, 4, 1.0);
    MaterialMap map = map_from_rows({
        "AAA",
        "LLL",
        "LAL",
        "LLL",
    });
    map.open_sides.top = true;
    label_bubbles(map);
    REQUIRE(map.n_bubbles == 2);
    FaceGeometry geom = closed_box_geometry(grid);
    bubble_liquid_area(grid, map, geom);
    prune_constraints(grid, map, find_enclosure_groups(map), {});

    int top_bubble = map.bubble_id(0, 3);
    int inner_bubble = map.bubble_id(1, 1);
    CHECK(map.active[top_bubble] == 0);
    CHECK(map.active[inner_bubble] == 1);
}

TEST_CASE("bubble_liquid_area: face fractions weight the boundary")
{
    StaggeredGrid grid(3, 3, 1.0);
    MaterialMap map = map_from_rows({"LLL", "LAL", "LLL"});
    label_bubbles(map);
    FaceGeometry geom = closed_box_geometry(grid);
    bubble_liquid_area(grid, map, geom);
    CHECK(map.liquid_area[0] == doctest::Approx(4.0));

    geom.w.u(1, 1) = 0.5; // one face half blocked by solid
    bubble_liquid_area(grid, map, geom);
    CHECK(map.liquid_area[0] == doctest::Approx(3.5));
}

TEST_CASE("bubble_liquid_area: solid corner contributes nothing")
{
    StaggeredGrid grid(3, 3, 1.0);
    MaterialMap map = map_from_rows({
        "SAL",
        "SAL",
        "SSS",
    });
    // The air column touches solid on the left and below; only the liquid
    // column on the right counts.
    label_bubbles(map);
    FaceGeometry geom = closed_box_geometry(grid);
    bubble_liquid_area(grid, map, geom);
    CHECK(map.liquid_area[0] == doctest::Approx(2.0));
}

TEST_CASE("prune_constraints: enclosed group with n bubbles keeps n-1 active")
{
    oracles::Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        StaggeredGrid grid(8, 8, 0.125);
        MaterialMap map;
        map.label = CellField<CellLabel>(8, 8, CellLabel::Liquid);
        map.bubble_id = CellField<int32_t>(8, 8, -1);
        for (int c = 0; c < 64; ++c)
            if (rng.uniform(0.0, 1.0) < 0.35) map.label[c] = CellLabel::Air;
        int n = label_bubbles(map);
        FaceGeometry geom = closed_box_geometry(grid);
        bubble_liquid_area(grid, map, geom);
        auto groups = find_enclosure_groups(map);
        prune_constraints(grid, map, groups, {});

        for (const EnclosureGroup& group : groups) {
            if (!group.enclosed) continue;
            int active = 0;
            for (int b : group.bubbles) active += map.active[static_cast<size_t>(b)];
            int expected = std::max(static_cast<int>(group.bubbles.size()) - 1, 0);
            CHECK(active == expected);
        }
        CHECK(n >= 0);
    }
}
