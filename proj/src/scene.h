#ifndef BUBBLESIM_SCENE_H
#define BUBBLESIM_SCENE_H

#include <string>
#include <vector>

#include "grid.h"

namespace bubblesim {

enum class Shape { Box, Circle, HalfPlane };
enum class CsgOp { Union, Subtract };

// Piecewise-constant rigid translation velocity over [t_begin, t_end).
struct MotionSegment {
    double t_begin = 0.0;
    double t_end = 0.0;
    Vec2 velocity;
};

// One signed-distance primitive. Composites fold the ordered list with
// min (union) / max against the negated part (subtract).
struct GeometryPrimitive {
    Shape shape = Shape::Box;
    CsgOp op = CsgOp::Union;

    // Box: lo/hi corners. Circle: center (= lo) and radius. Half plane:
    // point (= lo) and outward normal (= hi); negative on the opposite
    // side of the normal.
    Vec2 lo;
    Vec2 hi;
    double radius = 0.0;

    std::vector<MotionSegment> motion;

    // Exact standalone signed distance at time 0.
    double sdf(Vec2 p) const;
    // Accumulated rigid displacement up to time t.
    Vec2 displacement(double t) const;
    // Mean translation velocity over [t0, t1] (exact for the schedule).
    Vec2 mean_velocity(double t0, double t1) const;
    // Signed distance of the translated primitive at time t.
    double sdf_at(Vec2 p, double t) const { return sdf(p - displacement(t)); }
};

// Ordered CSG list over primitives; evaluates the composite signed distance
// and queries which union primitive owns a point (most negative SDF).
class PrimitiveSet {
public:
    PrimitiveSet() = default;
    explicit PrimitiveSet(std::vector<GeometryPrimitive> prims) : prims_(std::move(prims)) {}

    bool empty() const { return prims_.empty(); }
    const std::vector<GeometryPrimitive>& primitives() const { return prims_; }

    double sdf(Vec2 p, double t = 0.0) const;

    // Translation velocity of the solid occupying p over the interval
    // [t0, t1]: the union primitive with the most negative SDF at time t1
    // wins; zero when no primitive covers the query or everything is static.
    Vec2 velocity_at(Vec2 p, double t0, double t1) const;

    bool has_motion() const;

private:
    std::vector<GeometryPrimitive> prims_;
};

} // namespace bubblesim

#endif
