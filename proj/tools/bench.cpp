// Times the data-parallel kernels at one thread and at the full thread cap,
// and checks that both configurations produce bitwise identical results.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "parallel.h"
#include "pcg.h"
#include "projection.h"
#include "runner.h"
#include "timeloop.h"

using namespace bubblesim;

namespace {

double now_ms()
{
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class Fn>
double time_ms(int repeats, const Fn& fn)
{
    fn(); // warm up
    double t0 = now_ms();
    for (int k = 0; k < repeats; ++k) fn();
    return (now_ms() - t0) / repeats;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Row {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool match = false;
};

} // namespace

int main(int argc, char** argv)
{
    int resolution = 192;
    int frames = 3;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--resolution") == 0 && i + 1 < argc)
            resolution = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--frames") == 0 && i + 1 < argc)
            frames = std::atoi(argv[++i]);
    }

    ScenarioConfig config = build_preset("trapped_bubble");
    config.nx = resolution;
    config.ny = resolution;
    config.dx = 1.0 / resolution;
    config.n_frames = frames;

    // Develop a nontrivial flow state first.
    Simulation sim(config);
    for (int f = 0; f < frames; ++f) sim.step_frame();

    const StaggeredGrid& grid = sim.grid();
    MaterialMap map = sim.materials();
    FaceField velocity = sim.velocity();
    CellField<double> phi = sim.liquid_phi();
    PrimitiveSet solids(config.solids);
    double t = sim.time();
    PhysicsParams params{config.rho, config.gravity, config.sigma, 1e-3};

    FaceGeometry geom = compute_face_geometry(grid, solids, t, t, map, phi);
    MaterialMap assembly_map = map;
    ReducedSystem system =
        assemble_reduced_system(grid, assembly_map, geom, velocity, params, nullptr, 0.0);
    std::vector<double> ones(static_cast<size_t>(system.A.size()), 1.0);

    const int threads = []() {
        set_max_threads(0);
        return max_threads();
    }();

    struct Kernel {
        std::string name;
        int repeats;
        std::vector<double> (*unused)(void);
    };

    std::vector<Row> rows;
    auto bench = [&](const std::string& name, int repeats, auto&& fn) {
        Row row;
        row.name = name;
        set_max_threads(1);
        std::vector<double> serial_out = fn();
        row.serial_ms = time_ms(repeats, [&] { fn(); });
        set_max_threads(threads);
        std::vector<double> parallel_out = fn();
        row.parallel_ms = time_ms(repeats, [&] { fn(); });
        row.match = bitwise_equal(serial_out, parallel_out);
        set_max_threads(0);
        rows.push_back(row);
    };

    bench("advect_faces", 10, [&] {
        return advect_face_field(grid, velocity, velocity, 1e-3).data();
    });
    bench("advect_cells", 10, [&] {
        return advect_cell_field(grid, phi, velocity, 1e-3).data();
    });
    bench("face_geometry", 10, [&] {
        FaceGeometry g = compute_face_geometry(grid, solids, t, t, map, phi);
        std::vector<double> out = g.w.data();
        out.insert(out.end(), g.theta.data().begin(), g.theta.data().end());
        return out;
    });
    bench("assemble_system", 10, [&] {
        MaterialMap local = map;
        ReducedSystem s =
            assemble_reduced_system(grid, local, geom, velocity, params, nullptr, 0.0);
        std::vector<double> out = s.rhs;
        for (int k = 0; k < s.A.nonzeros(); ++k) out.push_back(s.A.value(k));
        return out;
    });
    bench("matvec", 50, [&] { return matvec(system.A, ones); });
    bench("pcg_solve", 3, [&] {
        std::vector<double> x;
        pcg_solve(system.A, system.rhs, x, {1e-5, -1, true});
        return x;
    });

    std::printf("resolution %dx%d, threads %d vs 1\n", resolution, resolution, threads);
    std::printf("%-18s %12s %12s %9s %8s\n", "kernel", "serial [ms]", "parallel [ms]", "speedup",
                "bitwise");
    bool all_match = true;
    for (const Row& row : rows) {
        std::printf("%-18s %12.3f %12.3f %8.2fx %8s\n", row.name.c_str(), row.serial_ms,
                    row.parallel_ms, row.serial_ms / row.parallel_ms,
                    row.match ? "equal" : "DIFFER");
        all_match = all_match && row.match;
    }
    if (!all_match) {
        std::fprintf(stderr, "error: serial and parallel results differ\n");
        return 1;
    }
    return 0;
}
