#include "projection.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "parallel.h"

namespace bubblesim {

namespace {

// One side of a face: an in-domain cell, or the virtual space beyond the
// boundary (solid for closed sides, air beyond open sides).
struct Side {
    bool in_domain = false;
    CellLabel label = CellLabel::Solid;
    int cell = -1;
};

Side side_of(const MaterialMap& map, int i, int j)
{
    const int nx = map.label.nx();
    const int ny = map.label.ny();
    Side s;
    if (i < 0) {
        s.label = map.open_sides.left ? CellLabel::Air : CellLabel::Solid;
    } else if (i >= nx) {
        s.label = map.open_sides.right ? CellLabel::Air : CellLabel::Solid;
    } else if (j < 0) {
        s.label = map.open_sides.bottom ? CellLabel::Air : CellLabel::Solid;
    } else if (j >= ny) {
        s.label = map.open_sides.top ? CellLabel::Air : CellLabel::Solid;
    } else {
        s.in_domain = true;
        s.label = map.label(i, j);
        s.cell = map.label.flatten(i, j);
    }
    return s;
}

// Fixed per-cell face enumeration: -x, +x, -y, +y. sign is the outward flux
// orientation of the face's stored component for this cell.
struct CellFace {
    int flat;    // FaceField flat index
    double sign; // +1 when the face sits on the cell's positive side
    Side other;
};

template <class Fn>
void for_each_face_of(const MaterialMap& map, const FaceField& layout, int i, int j, Fn&& fn)
{
    fn(CellFace{layout.u_index(i, j), -1.0, side_of(map, i - 1, j)});
    fn(CellFace{layout.u_index(i + 1, j), +1.0, side_of(map, i + 1, j)});
    fn(CellFace{layout.v_index(i, j), -1.0, side_of(map, i, j - 1)});
    fn(CellFace{layout.v_index(i, j + 1), +1.0, side_of(map, i, j + 1)});
}

} // namespace

double cell_curvature(const StaggeredGrid& grid, const CellField<double>& phi, int i, int j)
{
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;
    auto at = [&](int ci, int cj) {
        return phi(std::clamp(ci, 0, nx - 1), std::clamp(cj, 0, ny - 1));
    };

    double px = (at(i + 1, j) - at(i - 1, j)) / (2.0 * dx);
    double py = (at(i, j + 1) - at(i, j - 1)) / (2.0 * dx);
    double pxx = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (dx * dx);
    double pyy = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (dx * dx);
    double pxy = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) /
                 (4.0 * dx * dx);

    double grad2 = px * px + py * py;
    if (std::sqrt(grad2) < 1e-8) return 0.0;
    double kappa = (pxx * py * py - 2.0 * pxy * px * py + pyy * px * px) / std::pow(grad2, 1.5);
    return std::clamp(kappa, -1.0 / dx, 1.0 / dx);
}

FaceField compute_face_curvature(const StaggeredGrid& grid, const CellField<double>& phi,
                                 const MaterialMap& map, const FaceGeometry& geom)
{
    FaceField kappa(grid.nx, grid.ny, 0.0);
    const int nx = grid.nx;
    const int ny = grid.ny;

    auto face_value = [&](int li, int lj, int ai, int aj, double theta) {
        double kl = cell_curvature(grid, phi, li, lj);
        double ka = cell_curvature(grid, phi, ai, aj);
        double k = kl + theta * (ka - kl);
        return std::clamp(k, -1.0 / grid.dx, 1.0 / grid.dx);
    };

    parallel_for((nx + 1) * ny, [&](int f) {
        int i = f % (nx + 1);
        int j = f / (nx + 1);
        if (i == 0 || i == nx) return;
        CellLabel la = map.label(i - 1, j);
        CellLabel lb = map.label(i, j);
        if (la == CellLabel::Liquid && lb == CellLabel::Air)
            kappa.u(i, j) = face_value(i - 1, j, i, j, geom.theta.u(i, j));
        else if (la == CellLabel::Air && lb == CellLabel::Liquid)
            kappa.u(i, j) = face_value(i, j, i - 1, j, geom.theta.u(i, j));
    });
    parallel_for(nx * (ny + 1), [&](int f) {
        int i = f % nx;
        int j = f / nx;
        if (j == 0 || j == ny) return;
        CellLabel la = map.label(i, j - 1);
        CellLabel lb = map.label(i, j);
        if (la == CellLabel::Liquid && lb == CellLabel::Air)
            kappa.v(i, j) = face_value(i, j - 1, i, j, geom.theta.v(i, j));
        else if (la == CellLabel::Air && lb == CellLabel::Liquid)
            kappa.v(i, j) = face_value(i, j, i, j - 1, geom.theta.v(i, j));
    });
    return kappa;
}

ReducedSystem assemble_reduced_system(const StaggeredGrid& grid, MaterialMap& map,
                                      const FaceGeometry& geom, const FaceField& u_star,
                                      const PhysicsParams& params, const FaceField* kappa,
                                      double divergence_source)
{
    assert(params.rho > 0.0 && params.dt > 0.0 && params.sigma >= 0.0);
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;
    const double scale = params.dt / (params.rho * dx * dx);
    const double inv_dx = 1.0 / dx;
    const double sigma = params.sigma;

    ReducedSystem system;
    system.pressure_row = CellField<int32_t>(nx, ny, -1);
    system.bubble_row.assign(static_cast<size_t>(map.n_bubbles), -1);

    // A liquid cell with no non-solid face has nothing to solve for; an
    // active bubble with no liquid face cannot be enforced.
    CellField<uint8_t> has_dof(nx, ny, 0);
    std::vector<uint8_t> bubble_has_liquid_face(static_cast<size_t>(map.n_bubbles), 0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (map.label(i, j) == CellLabel::Solid) continue;
            for_each_face_of(map, geom.w, i, j, [&](const CellFace& face) {
                if (geom.w.flat(face.flat) <= 0.0) return;
                if (face.other.label == CellLabel::Solid) return;
                if (map.label(i, j) == CellLabel::Liquid) {
                    has_dof(i, j) = 1;
                } else {
                    int b = map.bubble_id(i, j);
                    if (b >= 0 && face.other.in_domain && face.other.label == CellLabel::Liquid)
                        bubble_has_liquid_face[static_cast<size_t>(b)] = 1;
                }
            });
        }

    for (int b = 0; b < map.n_bubbles; ++b) {
        if (map.active[static_cast<size_t>(b)] && !bubble_has_liquid_face[static_cast<size_t>(b)]) {
            map.active[static_cast<size_t>(b)] = 0;
            system.degenerate_bubbles.push_back(b);
            std::fprintf(stderr,
                         "warning: bubble %d has no liquid faces; constraint deactivated\n", b);
        }
    }

    for (int c = 0; c < nx * ny; ++c)
        if (map.label[c] == CellLabel::Liquid && has_dof[c])
            system.pressure_row[c] = system.n_pressure++;
    for (int b = 0; b < map.n_bubbles; ++b)
        if (map.active[static_cast<size_t>(b)])
            system.bubble_row[static_cast<size_t>(b)] = system.n_pressure + system.n_multipliers++;

    const int n = system.n_pressure + system.n_multipliers;
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<size_t>(n));
    system.rhs.assign(static_cast<size_t>(n), 0.0);

    // Pressure rows, one independent row per liquid cell.
    parallel_for(nx * ny, [&](int c) {
        int row = system.pressure_row[c];
        if (row < 0) return;
        int i = c % nx;
        int j = c / nx;

        auto& entries = rows[static_cast<size_t>(row)];
        double diag = 0.0;
        double rhs = divergence_source;

        for_each_face_of(map, geom.w, i, j, [&](const CellFace& face) {
            const double w = geom.w.flat(face.flat);
            const double ustar = u_star.flat(face.flat);
            const double usolid = geom.solid_u.flat(face.flat);

            if (face.other.label == CellLabel::Solid) {
                // Wall over the whole face (cut corners included).
                rhs -= inv_dx * face.sign * usolid;
                return;
            }
            rhs -= inv_dx * face.sign * (w * ustar + (1.0 - w) * usolid);
            if (w <= 0.0) return;

            if (face.other.label == CellLabel::Liquid) {
                double coeff = scale * w;
                diag += coeff;
                int other_row = system.pressure_row[face.other.cell];
                assert(other_row >= 0);
                entries.emplace_back(other_row, -coeff);
            } else {
                // Liquid-air: ghost fluid with the bubble multiplier (or 0)
                // as the ghost pressure.
                double theta = geom.theta.flat(face.flat);
                double g = scale * w / theta;
                diag += g;
                int bubble = face.other.in_domain ? map.bubble_id[face.other.cell] : -1;
                if (bubble >= 0 && map.active[static_cast<size_t>(bubble)])
                    entries.emplace_back(system.bubble_row[static_cast<size_t>(bubble)], -g);
                if (sigma > 0.0 && kappa) rhs += g * sigma * kappa->flat(face.flat);
            }
        });

        entries.emplace_back(row, diag);
        system.rhs[static_cast<size_t>(row)] = rhs;
    });

    // Bubble rows: diagonal and right-hand side accumulated in a fixed
    // cell-major face order; off-diagonals are mirrored from the pressure
    // rows afterwards so A is bitwise symmetric.
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int b = map.bubble_id(i, j);
            if (b < 0) continue;
            int row = system.bubble_row[static_cast<size_t>(b)];
            if (row < 0) continue;

            double diag = 0.0;
            double rhs = 0.0;
            for_each_face_of(map, geom.w, i, j, [&](const CellFace& face) {
                if (face.other.label == CellLabel::Air) return; // interior or open boundary
                const double w = geom.w.flat(face.flat);
                const double usolid = geom.solid_u.flat(face.flat);
                if (face.other.label == CellLabel::Solid) {
                    rhs -= inv_dx * face.sign * usolid;
                    return;
                }
                // Liquid on the other side.
                const double ustar = u_star.flat(face.flat);
                rhs -= inv_dx * face.sign * (w * ustar + (1.0 - w) * usolid);
                if (w <= 0.0) return;
                double theta = geom.theta.flat(face.flat);
                double g = scale * w / theta;
                diag += g;
                if (sigma > 0.0 && kappa) rhs -= g * sigma * kappa->flat(face.flat);
            });

            rows[static_cast<size_t>(row)].emplace_back(row, diag);
            system.rhs[static_cast<size_t>(row)] += rhs;
        }

    for (int row = 0; row < system.n_pressure; ++row)
        for (const auto& [col, val] : rows[static_cast<size_t>(row)])
            if (col >= system.n_pressure)
                rows[static_cast<size_t>(col)].emplace_back(row, val);

    system.A = SparseSymMatrix::from_rows(std::move(rows));
    return system;
}

void apply_pressure_gradient(const StaggeredGrid& grid, const MaterialMap& map,
                             const FaceGeometry& geom, const ReducedSystem& system,
                             const std::vector<double>& solution, const PhysicsParams& params,
                             const FaceField& u_star, const FaceField* kappa, FaceField& velocity,
                             FaceMask& valid)
{
    if (static_cast<int>(solution.size()) != system.n_pressure + system.n_multipliers)
        throw std::logic_error("apply_pressure_gradient: solution size mismatch");

    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;
    const double sigma = params.sigma;
    velocity = FaceField(nx, ny, 0.0);
    valid = FaceMask(nx, ny, 0);

    auto pressure_of = [&](const Side& s) {
        int row = system.pressure_row[s.cell];
        if (row < 0) throw std::logic_error("apply_pressure_gradient: missing pressure unknown");
        return solution[static_cast<size_t>(row)];
    };
    auto ghost_of = [&](const Side& s, double kappa_f) {
        double lambda = 0.0;
        if (s.in_domain) {
            int bubble = map.bubble_id[s.cell];
            if (bubble >= 0 && map.active[static_cast<size_t>(bubble)])
                lambda = solution[static_cast<size_t>(system.bubble_row[static_cast<size_t>(bubble)])];
        }
        return lambda + sigma * kappa_f;
    };

    auto project_face = [&](int flat, const Side& a, const Side& b) {
        const double w = geom.w.flat(flat);
        if (w <= 0.0 || a.label == CellLabel::Solid || b.label == CellLabel::Solid) {
            velocity.flat(flat) = geom.solid_u.flat(flat);
            valid.flat(flat) = 1;
            return;
        }
        if (a.label == CellLabel::Air && b.label == CellLabel::Air) return; // unsimulated

        const double kappa_f = (sigma > 0.0 && kappa) ? kappa->flat(flat) : 0.0;
        double grad;
        if (a.label == CellLabel::Liquid && b.label == CellLabel::Liquid) {
            grad = (pressure_of(b) - pressure_of(a)) / (params.rho * dx);
        } else {
            double theta = geom.theta.flat(flat);
            double p_neg = a.label == CellLabel::Liquid ? pressure_of(a) : ghost_of(a, kappa_f);
            double p_pos = b.label == CellLabel::Liquid ? pressure_of(b) : ghost_of(b, kappa_f);
            grad = (p_pos - p_neg) / (params.rho * theta * dx);
        }
        velocity.flat(flat) = u_star.flat(flat) - params.dt * grad;
        valid.flat(flat) = 1;
    };

    parallel_for((nx + 1) * ny, [&](int f) {
        int i = f % (nx + 1);
        int j = f / (nx + 1);
        project_face(velocity.u_index(i, j), side_of(map, i - 1, j), side_of(map, i, j));
    });
    parallel_for(nx * (ny + 1), [&](int f) {
        int i = f % nx;
        int j = f / nx;
        project_face(velocity.v_index(i, j), side_of(map, i, j - 1), side_of(map, i, j));
    });
}

std::vector<BubbleFlux> measure_bubble_fluxes(const StaggeredGrid& grid, const MaterialMap& map,
                                              const FaceGeometry& geom, const FaceField& velocity)
{
    std::vector<BubbleFlux> flux(static_cast<size_t>(map.n_bubbles));
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = grid.dx;

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int b = map.bubble_id(i, j);
            if (b < 0) continue;
            BubbleFlux& out = flux[static_cast<size_t>(b)];
            for_each_face_of(map, geom.w, i, j, [&](const CellFace& face) {
                if (face.other.label == CellLabel::Air) return;
                const double w = geom.w.flat(face.flat);
                const double usolid = geom.solid_u.flat(face.flat);
                if (face.other.label == CellLabel::Solid) {
                    out.solid += face.sign * dx * usolid;
                    return;
                }
                out.liquid += face.sign * dx * w * velocity.flat(face.flat);
                out.solid += face.sign * dx * (1.0 - w) * usolid;
            });
        }
    return flux;
}

void write_matrix_market(const SparseSymMatrix& A, const std::vector<double>& rhs,
                         const std::string& matrix_path, const std::string& rhs_path)
{
    {
        std::ofstream out(matrix_path);
        if (!out) throw std::runtime_error("cannot open " + matrix_path);
        int lower = 0;
        for (int i = 0; i < A.size(); ++i)
            for (int k = A.row_begin(i); k < A.row_end(i); ++k)
                if (A.col(k) <= i) ++lower;
        out << "%%MatrixMarket matrix coordinate real symmetric\n";
        out << A.size() << " " << A.size() << " " << lower << "\n";
        char buf[64];
        for (int i = 0; i < A.size(); ++i)
            for (int k = A.row_begin(i); k < A.row_end(i); ++k)
                if (A.col(k) <= i) {
                    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i + 1, A.col(k) + 1,
                                  A.value(k));
                    out << buf;
                }
    }
    {
        std::ofstream out(rhs_path);
        if (!out) throw std::runtime_error("cannot open " + rhs_path);
        out << "%%MatrixMarket matrix array real general\n";
        out << rhs.size() << " 1\n";
        char buf[64];
        for (double v : rhs) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            out << buf;
        }
    }
}

} // namespace bubblesim
