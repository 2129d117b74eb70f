#include "scene.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bubblesim {

namespace {

double box_sdf(Vec2 p, Vec2 lo, Vec2 hi)
{
    Vec2 c{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
    Vec2 h{0.5 * (hi.x - lo.x), 0.5 * (hi.y - lo.y)};
    double qx = std::fabs(p.x - c.x) - h.x;
    double qy = std::fabs(p.y - c.y) - h.y;
    double ox = std::max(qx, 0.0);
    double oy = std::max(qy, 0.0);
    double outside = std::sqrt(ox * ox + oy * oy);
    double inside = std::min(std::max(qx, qy), 0.0);
    return outside + inside;
}

} // namespace

double GeometryPrimitive::sdf(Vec2 p) const
{
    switch (shape) {
    case Shape::Box:
        return box_sdf(p, lo, hi);
    case Shape::Circle:
        return std::hypot(p.x - lo.x, p.y - lo.y) - radius;
    case Shape::HalfPlane: {
        double nlen = std::hypot(hi.x, hi.y);
        if (nlen <= 0.0) return std::numeric_limits<double>::max();
        return ((p.x - lo.x) * hi.x + (p.y - lo.y) * hi.y) / nlen;
    }
    }
    return std::numeric_limits<double>::max();
}

Vec2 GeometryPrimitive::displacement(double t) const
{
    Vec2 d;
    for (const MotionSegment& seg : motion) {
        double overlap = std::min(t, seg.t_end) - seg.t_begin;
        if (overlap > 0.0) {
            d.x += overlap * seg.velocity.x;
            d.y += overlap * seg.velocity.y;
        }
    }
    return d;
}

Vec2 GeometryPrimitive::mean_velocity(double t0, double t1) const
{
    if (t1 <= t0) {
        // Instantaneous query: velocity of the active segment.
        for (const MotionSegment& seg : motion)
            if (t0 >= seg.t_begin && t0 < seg.t_end) return seg.velocity;
        return {};
    }
    Vec2 d0 = displacement(t0);
    Vec2 d1 = displacement(t1);
    return {(d1.x - d0.x) / (t1 - t0), (d1.y - d0.y) / (t1 - t0)};
}

double PrimitiveSet::sdf(Vec2 p, double t) const
{
    double phi = std::numeric_limits<double>::max();
    for (const GeometryPrimitive& prim : prims_) {
        double d = prim.sdf_at(p, t);
        if (prim.op == CsgOp::Union)
            phi = std::min(phi, d);
        else
            phi = std::max(phi, -d);
    }
    return phi;
}

Vec2 PrimitiveSet::velocity_at(Vec2 p, double t0, double t1) const
{
    // Ownership is decided where the solids sit at t1, matching the face
    // geometry evaluated at the end of the substep.
    double best = std::numeric_limits<double>::max();
    Vec2 vel;
    for (const GeometryPrimitive& prim : prims_) {
        if (prim.op != CsgOp::Union) continue;
        double d = prim.sdf_at(p, t1);
        if (d < best) {
            best = d;
            vel = prim.mean_velocity(t0, t1);
        }
    }
    return vel;
}

bool PrimitiveSet::has_motion() const
{
    for (const GeometryPrimitive& prim : prims_)
        if (!prim.motion.empty()) return true;
    return false;
}

} // namespace bubblesim
