#ifndef BUBBLESIM_SCENARIO_H
#define BUBBLESIM_SCENARIO_H

#include <stdexcept>
#include <string>
#include <vector>

#include "materials.h"
#include "scene.h"

namespace bubblesim {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct OutputOptions {
    std::string directory = "out";
    int frame_stride = 1;
    bool dump_matrix = false;
    bool timing = false; // real per-substep times in diagnostics.csv (breaks byte determinism)
};

// Declarative scene description: grid, physics constants, geometry, solver
// and output settings.
struct ScenarioConfig {
    std::string name = "scenario";

    int nx = 96;
    int ny = 96;
    double dx = 1.0 / 96.0;
    Vec2 origin{0.0, 0.0};
    OpenSides open_sides;

    double rho = 1000.0;
    Vec2 gravity{0.0, -9.8};
    double sigma = 0.0;
    double cfl = 1.0;
    int max_substeps = 5;
    double frame_rate = 30.0;
    int n_frames = 100;
    double volume_gain = 0.5;
    double solver_tolerance = 1e-5;
    int extrapolation_layers = 4;

    std::vector<GeometryPrimitive> solids;
    std::vector<GeometryPrimitive> liquid;
    std::vector<Vec2> freesurface_seeds;
    bool bubbles_enabled = true;

    OutputOptions output;
    long seed = 0;

    double frame_dt() const { return 1.0 / frame_rate; }
};

// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& config);

// Strict JSON parse: unknown keys are rejected, all values validated.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& source_name);

// Preset registry (scene analogs at desk scale).
std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
ScenarioConfig build_preset(const std::string& name);

} // namespace bubblesim

#endif
