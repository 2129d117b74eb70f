#include "scenario.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bubblesim {

using nlohmann::json;

namespace {

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

double require_number(const json& obj, const std::string& where, const char* key)
{
    if (!obj.contains(key)) throw ConfigError(where + "." + key + ": missing required field");
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback)
{
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

int int_or(const json& obj, const std::string& where, const char* key, int fallback)
{
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

bool bool_or(const json& obj, const std::string& where, const char* key, bool fallback)
{
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + ": expected a boolean");
    return v.get<bool>();
}

Vec2 parse_vec2(const json& v, const std::string& where)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(where + ": expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

GeometryPrimitive parse_primitive(const json& obj, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    expect_keys(obj, where,
                {"shape", "op", "min", "max", "center", "radius", "point", "normal", "motion"});

    GeometryPrimitive prim;
    if (!obj.contains("shape") || !obj.at("shape").is_string())
        throw ConfigError(where + ".shape: expected 'box', 'circle' or 'half_plane'");
    std::string shape = obj.at("shape").get<std::string>();
    if (shape == "box")
        prim.shape = Shape::Box;
    else if (shape == "circle")
        prim.shape = Shape::Circle;
    else if (shape == "half_plane")
        prim.shape = Shape::HalfPlane;
    else
        throw ConfigError(where + ".shape: unknown shape '" + shape + "'");

    std::string op = obj.contains("op") ? obj.at("op").get<std::string>() : "union";
    if (op == "union")
        prim.op = CsgOp::Union;
    else if (op == "subtract")
        prim.op = CsgOp::Subtract;
    else
        throw ConfigError(where + ".op: expected 'union' or 'subtract'");

    switch (prim.shape) {
    case Shape::Box:
        if (!obj.contains("min") || !obj.contains("max"))
            throw ConfigError(where + ": box needs 'min' and 'max'");
        prim.lo = parse_vec2(obj.at("min"), where + ".min");
        prim.hi = parse_vec2(obj.at("max"), where + ".max");
        if (prim.lo.x >= prim.hi.x || prim.lo.y >= prim.hi.y)
            throw ConfigError(where + ": box min must be strictly below max");
        break;
    case Shape::Circle:
        if (!obj.contains("center")) throw ConfigError(where + ": circle needs 'center'");
        prim.lo = parse_vec2(obj.at("center"), where + ".center");
        prim.radius = require_number(obj, where, "radius");
        if (prim.radius <= 0.0) throw ConfigError(where + ".radius: must be positive");
        break;
    case Shape::HalfPlane:
        if (!obj.contains("point") || !obj.contains("normal"))
            throw ConfigError(where + ": half_plane needs 'point' and 'normal'");
        prim.lo = parse_vec2(obj.at("point"), where + ".point");
        prim.hi = parse_vec2(obj.at("normal"), where + ".normal");
        if (prim.hi.x == 0.0 && prim.hi.y == 0.0)
            throw ConfigError(where + ".normal: must be nonzero");
        break;
    }

    if (obj.contains("motion")) {
        const json& motion = obj.at("motion");
        if (!motion.is_array()) throw ConfigError(where + ".motion: expected an array");
        for (size_t k = 0; k < motion.size(); ++k) {
            const json& seg = motion[k];
            std::string seg_where = where + ".motion[" + std::to_string(k) + "]";
            expect_keys(seg, seg_where, {"t_begin", "t_end", "velocity"});
            MotionSegment m;
            m.t_begin = require_number(seg, seg_where, "t_begin");
            m.t_end = require_number(seg, seg_where, "t_end");
            if (!seg.contains("velocity"))
                throw ConfigError(seg_where + ".velocity: missing required field");
            m.velocity = parse_vec2(seg.at("velocity"), seg_where + ".velocity");
            if (m.t_end <= m.t_begin)
                throw ConfigError(seg_where + ": t_end must exceed t_begin");
            prim.motion.push_back(m);
        }
    }
    return prim;
}

int line_of_byte(const std::string& text, size_t byte)
{
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace

void validate_config(const ScenarioConfig& config)
{
    if (config.nx < 3 || config.ny < 3) throw ConfigError("grid.nx/ny: must be >= 3");
    if (config.dx <= 0.0) throw ConfigError("grid.dx: must be positive");
    if (config.rho <= 0.0) throw ConfigError("physics.rho: must be positive");
    if (config.sigma < 0.0) throw ConfigError("physics.sigma: must be >= 0");
    if (config.cfl <= 0.0) throw ConfigError("physics.cfl: must be positive");
    if (config.max_substeps < 1) throw ConfigError("physics.max_substeps: must be >= 1");
    if (config.frame_rate <= 0.0) throw ConfigError("physics.frame_rate: must be positive");
    if (config.n_frames < 0) throw ConfigError("physics.n_frames: must be >= 0");
    if (config.volume_gain < 0.0) throw ConfigError("physics.volume_gain: must be >= 0");
    if (config.solver_tolerance <= 0.0 || config.solver_tolerance >= 1.0)
        throw ConfigError("physics.solver_tolerance: must lie in (0, 1)");
    if (config.extrapolation_layers < 1)
        throw ConfigError("physics.extrapolation_layers: must be >= 1");
    if (config.output.frame_stride < 1) throw ConfigError("output.frame_stride: must be >= 1");

    StaggeredGrid grid(config.nx, config.ny, config.dx, config.origin);
    Vec2 hi = grid.max_corner();

    for (size_t k = 0; k < config.freesurface_seeds.size(); ++k) {
        Vec2 seed = config.freesurface_seeds[k];
        if (!grid.contains(seed))
            throw ConfigError("freesurface_seeds[" + std::to_string(k) +
                              "]: point lies outside the domain box");
    }

    auto check_extent = [&](const std::vector<GeometryPrimitive>& prims, const char* list) {
        for (size_t k = 0; k < prims.size(); ++k) {
            const GeometryPrimitive& p = prims[k];
            bool outside = false;
            if (p.shape == Shape::Box)
                outside = p.hi.x < grid.origin.x || p.lo.x > hi.x || p.hi.y < grid.origin.y ||
                          p.lo.y > hi.y;
            else if (p.shape == Shape::Circle)
                outside = p.lo.x + p.radius < grid.origin.x || p.lo.x - p.radius > hi.x ||
                          p.lo.y + p.radius < grid.origin.y || p.lo.y - p.radius > hi.y;
            if (outside && p.op == CsgOp::Union)
                throw ConfigError(std::string(list) + "[" + std::to_string(k) +
                                  "]: primitive lies entirely outside the domain box");
        }
    };
    check_extent(config.solids, "solids");
    check_extent(config.liquid, "liquid");
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& source_name)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(source_name + ":" + std::to_string(line_of_byte(text, err.byte)) +
                          ": " + err.what());
    }
    if (!root.is_object()) throw ConfigError(source_name + ": top level must be an object");

    expect_keys(root, "config",
                {"name", "grid", "physics", "solids", "liquid", "freesurface_seeds",
                 "bubbles_enabled", "output", "seed"});

    ScenarioConfig config;
    if (root.contains("name")) config.name = root.at("name").get<std::string>();

    if (!root.contains("grid")) throw ConfigError("grid: missing required section");
    const json& grid = root.at("grid");
    expect_keys(grid, "grid", {"nx", "ny", "dx", "origin", "open_sides"});
    config.nx = int_or(grid, "grid", "nx", config.nx);
    config.ny = int_or(grid, "grid", "ny", config.ny);
    config.dx = require_number(grid, "grid", "dx");
    if (grid.contains("origin")) config.origin = parse_vec2(grid.at("origin"), "grid.origin");
    if (grid.contains("open_sides")) {
        const json& sides = grid.at("open_sides");
        if (!sides.is_array()) throw ConfigError("grid.open_sides: expected an array");
        for (const json& side : sides) {
            std::string s = side.get<std::string>();
            if (s == "left")
                config.open_sides.left = true;
            else if (s == "right")
                config.open_sides.right = true;
            else if (s == "bottom")
                config.open_sides.bottom = true;
            else if (s == "top")
                config.open_sides.top = true;
            else
                throw ConfigError("grid.open_sides: unknown side '" + s + "'");
        }
    }

    if (root.contains("physics")) {
        const json& phys = root.at("physics");
        expect_keys(phys, "physics",
                    {"rho", "gravity", "sigma", "cfl", "max_substeps", "frame_rate", "n_frames",
                     "volume_gain", "solver_tolerance", "extrapolation_layers"});
        config.rho = number_or(phys, "physics", "rho", config.rho);
        if (phys.contains("gravity"))
            config.gravity = parse_vec2(phys.at("gravity"), "physics.gravity");
        config.sigma = number_or(phys, "physics", "sigma", config.sigma);
        config.cfl = number_or(phys, "physics", "cfl", config.cfl);
        config.max_substeps = int_or(phys, "physics", "max_substeps", config.max_substeps);
        config.frame_rate = number_or(phys, "physics", "frame_rate", config.frame_rate);
        config.n_frames = int_or(phys, "physics", "n_frames", config.n_frames);
        config.volume_gain = number_or(phys, "physics", "volume_gain", config.volume_gain);
        config.solver_tolerance =
            number_or(phys, "physics", "solver_tolerance", config.solver_tolerance);
        config.extrapolation_layers =
            int_or(phys, "physics", "extrapolation_layers", config.extrapolation_layers);
    }

    auto parse_primitives = [&](const char* key, std::vector<GeometryPrimitive>& out) {
        if (!root.contains(key)) return;
        const json& list = root.at(key);
        if (!list.is_array()) throw ConfigError(std::string(key) + ": expected an array");
        for (size_t k = 0; k < list.size(); ++k)
            out.push_back(
                parse_primitive(list[k], std::string(key) + "[" + std::to_string(k) + "]"));
    };
    parse_primitives("solids", config.solids);
    parse_primitives("liquid", config.liquid);

    if (root.contains("freesurface_seeds")) {
        const json& seeds = root.at("freesurface_seeds");
        if (!seeds.is_array()) throw ConfigError("freesurface_seeds: expected an array");
        for (size_t k = 0; k < seeds.size(); ++k)
            config.freesurface_seeds.push_back(
                parse_vec2(seeds[k], "freesurface_seeds[" + std::to_string(k) + "]"));
    }

    config.bubbles_enabled = bool_or(root, "config", "bubbles_enabled", true);

    if (root.contains("output")) {
        const json& output = root.at("output");
        expect_keys(output, "output", {"directory", "frame_stride", "dump_matrix", "timing"});
        if (output.contains("directory"))
            config.output.directory = output.at("directory").get<std::string>();
        config.output.frame_stride =
            int_or(output, "output", "frame_stride", config.output.frame_stride);
        config.output.dump_matrix =
            bool_or(output, "output", "dump_matrix", config.output.dump_matrix);
        config.output.timing = bool_or(output, "output", "timing", config.output.timing);
    }

    if (root.contains("seed")) {
        if (!root.at("seed").is_number_integer())
            throw ConfigError("seed: expected an integer");
        config.seed = root.at("seed").get<long>();
    }

    validate_config(config);
    return config;
}

ScenarioConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

namespace {

GeometryPrimitive box(Vec2 lo, Vec2 hi, CsgOp op = CsgOp::Union)
{
    GeometryPrimitive p;
    p.shape = Shape::Box;
    p.op = op;
    p.lo = lo;
    p.hi = hi;
    return p;
}

GeometryPrimitive circle(Vec2 center, double radius, CsgOp op = CsgOp::Union)
{
    GeometryPrimitive p;
    p.shape = Shape::Circle;
    p.op = op;
    p.lo = center;
    p.radius = radius;
    return p;
}

GeometryPrimitive half_plane_below(double y)
{
    GeometryPrimitive p;
    p.shape = Shape::HalfPlane;
    p.op = CsgOp::Union;
    p.lo = {0.0, y};
    p.hi = {0.0, 1.0}; // negative below y
    return p;
}

ScenarioConfig base_config(const std::string& name)
{
    ScenarioConfig config;
    config.name = name;
    config.nx = 96;
    config.ny = 96;
    config.dx = 1.0 / 96.0;
    return config;
}

struct PresetEntry {
    const char* name;
    const char* description;
    ScenarioConfig (*build)();
};

ScenarioConfig make_hydrostatic()
{
    ScenarioConfig c = base_config("hydrostatic");
    c.liquid.push_back(half_plane_below(0.5));
    c.n_frames = 30;
    return c;
}

ScenarioConfig make_trapped_bubble()
{
    ScenarioConfig c = base_config("trapped_bubble");
    c.liquid.push_back(half_plane_below(0.7));
    c.liquid.push_back(circle({0.5, 0.35}, 0.12, CsgOp::Subtract));
    c.n_frames = 120;
    return c;
}

ScenarioConfig make_water_cooler()
{
    ScenarioConfig c = base_config("water_cooler_2d");
    // Sealed tank with a neck opening at the bottom, plus a shallow pool.
    c.solids.push_back(box({0.20, 0.50}, {0.80, 0.95}));
    c.solids.push_back(box({0.24, 0.54}, {0.76, 0.91}, CsgOp::Subtract));
    c.solids.push_back(box({0.45, 0.48}, {0.55, 0.56}, CsgOp::Subtract));
    c.liquid.push_back(box({0.24, 0.54}, {0.76, 0.93}));
    c.liquid.push_back(box({0.45, 0.46}, {0.55, 0.56}));
    c.liquid.push_back(half_plane_below(0.12));
    c.n_frames = 240;
    return c;
}

ScenarioConfig make_wall_with_holes()
{
    ScenarioConfig c = base_config("wall_with_holes");
    c.solids.push_back(box({0.48, -0.10}, {0.52, 1.10}));
    c.solids.push_back(box({0.44, 0.06}, {0.56, 0.14}, CsgOp::Subtract));
    c.solids.push_back(box({0.44, 0.20}, {0.56, 0.28}, CsgOp::Subtract));
    c.liquid.push_back(box({-0.10, -0.10}, {0.48, 0.80}));
    c.liquid.push_back(box({0.44, 0.06}, {0.56, 0.14}));
    c.liquid.push_back(box({0.44, 0.20}, {0.56, 0.28}));
    c.n_frames = 240;
    return c;
}

ScenarioConfig make_moving_platform()
{
    ScenarioConfig c = base_config("moving_platform");
    // Partial divider; the platform seals the left chamber and descends.
    c.solids.push_back(box({0.38, 0.30}, {0.42, 0.85}));
    GeometryPrimitive platform = box({-0.02, 0.55}, {0.40, 0.61});
    platform.motion.push_back({0.0, 2.5, {0.0, -0.12}});
    c.solids.push_back(platform);
    c.liquid.push_back(half_plane_below(0.45));
    c.n_frames = 300;
    return c;
}

ScenarioConfig make_rising_bubble()
{
    ScenarioConfig c = base_config("rising_bubble");
    c.nx = 96;
    c.ny = 192;
    c.dx = 0.5 / 96.0;
    c.liquid.push_back(half_plane_below(0.8));
    c.liquid.push_back(box({0.20, 0.10}, {0.30, 0.20}, CsgOp::Subtract));
    c.n_frames = 200;
    return c;
}

ScenarioConfig make_surface_tension_square()
{
    ScenarioConfig c = base_config("surface_tension_square");
    c.gravity = {0.0, 0.0};
    c.sigma = 2.0;
    c.max_substeps = 20;
    c.liquid.push_back(circle({0.5, 0.5}, 0.38));
    c.liquid.push_back(box({0.38, 0.38}, {0.62, 0.62}, CsgOp::Subtract));
    c.n_frames = 300;
    return c;
}

const PresetEntry kPresets[] = {
    {"hydrostatic", "closed box, half full, no dynamics; equilibrium validation",
     make_hydrostatic},
    {"trapped_bubble", "submerged bubble under a free surface in a closed box",
     make_trapped_bubble},
    {"water_cooler_2d", "sealed tank draining through a neck; glugging air exchange",
     make_water_cooler},
    {"wall_with_holes", "closed tank split by a wall with two hole rows", make_wall_with_holes},
    {"moving_platform", "descending platform pushes a sealed air pocket", make_moving_platform},
    {"rising_bubble", "square bubble rising through a tall liquid column (inviscid)",
     make_rising_bubble},
    {"surface_tension_square", "square bubble in a liquid disk, zero gravity, surface tension",
     make_surface_tension_square},
};

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const PresetEntry& entry : kPresets) names.push_back(entry.name);
    return names;
}

std::string preset_description(const std::string& name)
{
    for (const PresetEntry& entry : kPresets)
        if (name == entry.name) return entry.description;
    return "";
}

ScenarioConfig build_preset(const std::string& name)
{
    for (const PresetEntry& entry : kPresets)
        if (name == entry.name) {
            ScenarioConfig config = entry.build();
            validate_config(config);
            return config;
        }
    std::string message = "unknown preset '" + name + "'; available:";
    for (const PresetEntry& entry : kPresets) message += std::string(" ") + entry.name;
    throw ConfigError(message);
}

} // namespace bubblesim
