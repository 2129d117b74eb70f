#include <doctest.h>

#include <cmath>

#include "materials.h"
#include "oracles.h"
#include "scene.h"

using namespace bubblesim;

TEST_CASE("classify_cells: solid precedence and partition")
{
    StaggeredGrid grid(3, 3, 0.5);
    LevelSetField liquid(grid, SurfaceKind::Liquid);
    LevelSetField solid(grid, SurfaceKind::Solid);

    liquid.phi(0, 0) = 0.2;
    solid.phi(0, 0) = -0.3; // solid wins even though phi_L is positive
    liquid.phi(1, 0) = -0.1;
    solid.phi(1, 0) = 0.5;
    liquid.phi(2, 0) = 0.4;
    solid.phi(2, 0) = 0.5;
    liquid.phi(0, 1) = -0.2;
    solid.phi(0, 1) = -0.1; // both negative: solid takes precedence

    MaterialMap map;
    classify_cells(grid, liquid, solid, map);
    CHECK(map.label(0, 0) == CellLabel::Solid);
    CHECK(map.label(1, 0) == CellLabel::Liquid);
    CHECK(map.label(2, 0) == CellLabel::Air);
    CHECK(map.label(0, 1) == CellLabel::Solid);

    // Exactly one label per cell is guaranteed by the type; spot-check the
    // default fill is air.
    CHECK(map.label(2, 2) == CellLabel::Air);
}

TEST_CASE("classify_cells: dimension mismatch is a configuration error")
{
    StaggeredGrid grid(4, 4, 1.0);
    LevelSetField liquid(grid, SurfaceKind::Liquid);
    LevelSetField solid(StaggeredGrid(5, 4, 1.0), SurfaceKind::Solid);
    MaterialMap map;
    CHECK_THROWS_AS(classify_cells(grid, liquid, solid, map), std::invalid_argument);
}

TEST_CASE("face_fraction: endpoints and midpoint crossing")
{
    CHECK(face_fraction(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(face_fraction(-1.0, -1.0) == doctest::Approx(0.0));
    CHECK(face_fraction(-0.5, 0.5) == doctest::Approx(0.5));
    CHECK(face_fraction(0.5, -0.5) == doctest::Approx(0.5));
    CHECK(face_fraction(-0.25, 0.75) == doctest::Approx(0.75));
    CHECK(face_fraction(0.0, -1.0) == doctest::Approx(0.0));
}

TEST_CASE("face_fraction: symmetry and monotonicity")
{
    oracles::Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        double a = rng.uniform(-2.0, 2.0);
        double b = rng.uniform(-2.0, 2.0);
        CHECK(face_fraction(a, b) == face_fraction(b, a));

        double a2 = a + rng.uniform(0.0, 1.0);
        CHECK(face_fraction(a2, b) >= face_fraction(a, b));
    }
}

TEST_CASE("ghost_theta: linear fraction with clamp floor")
{
    CHECK(ghost_theta(-0.5, 0.5) == doctest::Approx(0.5));
    CHECK(ghost_theta(-0.9, 0.1) == doctest::Approx(0.9));
    CHECK(ghost_theta(-1e-9, 1.0) == doctest::Approx(kThetaMin));
    // Label/level-set disagreement resolves to a full fraction.
    CHECK(ghost_theta(0.3, 0.5) == doctest::Approx(1.0));
    CHECK(ghost_theta(-0.3, -0.5) == doctest::Approx(1.0));
}

TEST_CASE("ghost_theta: monotone in each argument on the valid domain")
{
    oracles::Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        double liq = rng.uniform(-1.0, -1e-3);
        double air = rng.uniform(0.0, 1.0);
        double deeper = liq - rng.uniform(0.0, 1.0);
        CHECK(ghost_theta(deeper, air) >= ghost_theta(liq, air));
        double higher = air + rng.uniform(0.0, 1.0);
        CHECK(ghost_theta(liq, higher) <= ghost_theta(liq, air));
    }
}

TEST_CASE("solid velocity sampling: normal components only, static walls zero")
{
    StaggeredGrid grid(8, 8, 0.125);

    GeometryPrimitive wall;
    wall.shape = Shape::Box;
    wall.lo = {0.0, 0.0};
    wall.hi = {1.0, 0.25};

    GeometryPrimitive platform;
    platform.shape = Shape::Box;
    platform.lo = {0.25, 0.5};
    platform.hi = {0.75, 0.75};
    platform.motion.push_back({0.0, 10.0, {0.0, -1.0}});

    PrimitiveSet solids({wall, platform});

    // Static wall face.
    CHECK(solids.velocity_at({0.5, 0.1}, 0.0, 0.1).y == doctest::Approx(0.0));
    // Moving platform: y-normal faces see -1, x-normal faces see 0.
    Vec2 v = solids.velocity_at({0.5, 0.6}, 0.0, 0.1);
    CHECK(v.y == doctest::Approx(-1.0));
    CHECK(v.x == doctest::Approx(0.0));
    // Overlap resolution: the most deeply penetrated solid wins.
    Vec2 deep = solids.velocity_at({0.5, 0.05}, 0.0, 0.1);
    CHECK(deep.y == doctest::Approx(0.0));
}

TEST_CASE("composite SDF of disjoint unions equals pointwise min")
{
    GeometryPrimitive a;
    a.shape = Shape::Circle;
    a.lo = {0.25, 0.25};
    a.radius = 0.1;

    GeometryPrimitive b;
    b.shape = Shape::Box;
    b.lo = {0.6, 0.6};
    b.hi = {0.9, 0.8};

    PrimitiveSet both({a, b});
    oracles::Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Vec2 p{rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2)};
        double expected = std::min(a.sdf(p), b.sdf(p));
        CHECK(both.sdf(p) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("box SDF is exact inside, outside and at corners")
{
    GeometryPrimitive box;
    box.shape = Shape::Box;
    box.lo = {0.0, 0.0};
    box.hi = {2.0, 1.0};
    CHECK(box.sdf({1.0, 0.5}) == doctest::Approx(-0.5));
    CHECK(box.sdf({1.0, 1.5}) == doctest::Approx(0.5));
    CHECK(box.sdf({3.0, 2.0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(box.sdf({-1.0, 0.5}) == doctest::Approx(1.0));
}

TEST_CASE("grid constructor enforces the staggered invariants")
{
    CHECK_THROWS_AS(StaggeredGrid(2, 8, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(StaggeredGrid(8, 8, 0.0), std::invalid_argument);
    StaggeredGrid grid(4, 6, 0.25);
    FaceField faces(grid.nx, grid.ny);
    CHECK(faces.u_count() == 5 * 6);
    CHECK(faces.v_count() == 4 * 7);
    CellField<double> cells(grid.nx, grid.ny);
    CHECK(cells.count() == 24);
}

TEST_CASE("face geometry: closed boundaries are solid, cut faces fractional")
{
    StaggeredGrid grid(6, 6, 1.0 / 6.0);

    GeometryPrimitive block;
    block.shape = Shape::Box;
    block.lo = {0.0, 0.0};
    block.hi = {0.25, 0.25};
    PrimitiveSet solids({block});

    MaterialMap map;
    LevelSetField liquid(grid, SurfaceKind::Liquid);
    liquid.phi.fill(-1.0);
    LevelSetField solid(grid, SurfaceKind::Solid);
    solid.sample(grid, [&](Vec2 p) { return solids.sdf(p, 0.0); });
    classify_cells(grid, liquid, solid, map);

    FaceGeometry geom = compute_face_geometry(grid, solids, 0.0, 0.0, map, liquid.phi);

    for (int j = 0; j < grid.ny; ++j) {
        CHECK(geom.w.u(0, j) == 0.0);
        CHECK(geom.w.u(grid.nx, j) == 0.0);
    }
    // Face fully inside the block.
    CHECK(geom.w.u(1, 0) == doctest::Approx(0.0));
    // Face crossing the block's top edge at y = 0.25 splits mid-face.
    CHECK(geom.w.u(1, 1) == doctest::Approx(0.5));
    // Far away faces are fully open.
    CHECK(geom.w.u(4, 4) == doctest::Approx(1.0));
    for (double w : geom.w.data()) {
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
    }
}
