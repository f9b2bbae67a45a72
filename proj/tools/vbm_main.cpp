// vbm: visibility-based marching on occupancy grids.
//
// Subcommands:
//   solve   one-to-all distance field + parent matrix from one or more sources
//   plan    greedy single-goal query (exit 2 when the goal is unreachable)
//   oracle  brute-force visibility-graph reference for small maps
//   bench   scaling runs over empty grids, or a one-march path set on a map
//   render  distance / parents / path-overlay images (PPM)

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vbm/bench.hpp"
#include "vbm/field_io.hpp"
#include "vbm/grid.hpp"
#include "vbm/march.hpp"
#include "vbm/metric.hpp"
#include "vbm/oracle.hpp"
#include "vbm/render.hpp"
#include "vbm/vstar.hpp"

namespace {

struct MapConfig {
    std::string path;
    std::string format;  // "movingai", "pgm", or "" = pick by extension
    int threshold = 128;
};

struct CommonConfig {
    MapConfig map;
    std::vector<std::string> sources;
    std::string metric = "euclidean";
    std::string visibility = "dp";
    double tau = 0.5;
    bool no_corner_cut = true;
    bool march_through_obstacles = false;
};

vbm::Cell parse_cell(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected 'x,y' but got '" + text + "'");
    try {
        std::size_t pos1 = 0, pos2 = 0;
        const int x = std::stoi(text.substr(0, comma), &pos1);
        const int y = std::stoi(text.substr(comma + 1), &pos2);
        if (pos1 != comma || pos2 != text.size() - comma - 1) throw std::invalid_argument(text);
        return {x, y};
    } catch (const std::exception&) {
        throw std::invalid_argument("expected 'x,y' but got '" + text + "'");
    }
}

vbm::VisibilityBackend parse_backend(const std::string& name) {
    if (name == "exact") return vbm::VisibilityBackend::exact;
    if (name == "dp") return vbm::VisibilityBackend::dp;
    throw std::invalid_argument("unknown visibility backend '" + name + "' (expected exact|dp)");
}

vbm::OccupancyGrid load_map(const MapConfig& config) {
    std::ifstream in(config.path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open map file '" + config.path + "'");
    std::string format = config.format;
    if (format.empty()) {
        const auto ext = std::filesystem::path(config.path).extension().string();
        format = ext == ".pgm" ? "pgm" : "movingai";
    }
    if (format == "movingai") return vbm::parse_movingai_map(in);
    if (format == "pgm") return vbm::parse_pgm(in, config.threshold);
    throw std::invalid_argument("unknown map format '" + format + "' (expected movingai|pgm)");
}

vbm::MarchOptions make_options(const CommonConfig& config) {
    vbm::MarchOptions options;
    options.metric = vbm::parse_metric(config.metric);
    options.backend = parse_backend(config.visibility);
    options.tau = config.tau;
    options.no_corner_cut = config.no_corner_cut;
    options.march_through_obstacles = config.march_through_obstacles;
    return options;
}

std::vector<vbm::Cell> parse_cells(const std::vector<std::string>& texts) {
    std::vector<vbm::Cell> cells;
    cells.reserve(texts.size());
    for (const auto& t : texts) cells.push_back(parse_cell(t));
    return cells;
}

void write_file(const std::string& path, const std::string& bytes) {
    if (path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << bytes;
}

// --out-dist writes CSV for .csv paths and the raw VBMF format otherwise.
bool wants_csv(const std::string& path) {
    return path == "-" || std::filesystem::path(path).extension() == ".csv";
}

void add_map_options(CLI::App* cmd, MapConfig& map, bool required = true) {
    auto* opt = cmd->add_option("--map", map.path, "Map file");
    if (required) opt->required();
    cmd->add_option("--format", map.format, "Map format: movingai|pgm (default: by extension)");
    cmd->add_option("--threshold", map.threshold, "PGM occupancy threshold in [0,255]")
        ->default_val(128);
}

void add_march_options(CLI::App* cmd, CommonConfig& config) {
    cmd->add_option("--metric", config.metric,
                    "euclidean|manhattan|cubic|chebyshev|quasi-euclidean|minkowski:<p>")
        ->default_val("euclidean");
    cmd->add_option("--visibility", config.visibility, "Visibility backend: exact|dp")
        ->default_val("dp");
    cmd->add_option("--tau", config.tau, "Visibility threshold in (0,1]")->default_val(0.5);
    cmd->add_flag("--no-corner-cut,!--corner-cut", config.no_corner_cut,
                  "Disallow diagonal steps between two occupied cells (default on)");
    cmd->add_flag("--march-through-obstacles", config.march_through_obstacles,
                  "Also assign distances to occupied cells (never expanded)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact wavefront propagation on occupancy grids"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- solve ----
    CommonConfig solve_cfg;
    std::string solve_out_dist, solve_out_parents, solve_render;
    double solve_contours = 0.0;
    auto* solve = app.add_subcommand("solve", "One-to-all distance field and parent matrix");
    add_map_options(solve, solve_cfg.map);
    add_march_options(solve, solve_cfg);
    solve->add_option("--source", solve_cfg.sources, "Source cell x,y (repeatable)")->required();
    solve->add_option("--out-dist", solve_out_dist,
                      "Distance field output (.csv = text, otherwise raw VBMF; '-' = stdout)");
    solve->add_option("--out-parents", solve_out_parents, "Parent matrix CSV ('-' = stdout)");
    solve->add_option("--render", solve_render, "Write a distance-mode PPM image");
    solve->add_option("--contours", solve_contours, "Contour interval in pixels (0 = off)")
        ->default_val(0.0);
    solve->callback([&] {
        const auto grid = load_map(solve_cfg.map);
        const auto result = vbm::march(grid, parse_cells(solve_cfg.sources),
                                       make_options(solve_cfg));
        if (solve_out_dist.empty() && solve_out_parents.empty() && solve_render.empty())
            solve_out_dist = "-";
        if (!solve_out_dist.empty())
            write_file(solve_out_dist,
                       wants_csv(solve_out_dist) ? vbm::dist_csv(result) : vbm::dist_raw(result));
        if (!solve_out_parents.empty()) write_file(solve_out_parents, vbm::parents_csv(result));
        if (!solve_render.empty()) {
            vbm::RenderSpec spec;
            spec.mode = vbm::RenderMode::distance;
            spec.contour_interval = solve_contours;
            write_file(solve_render, vbm::render(result, grid, spec));
        }
    });

    // ---- plan ----
    CommonConfig plan_cfg;
    std::string plan_goal, plan_out_path;
    auto* plan = app.add_subcommand("plan", "Greedy single-goal shortest path");
    add_map_options(plan, plan_cfg.map);
    add_march_options(plan, plan_cfg);
    plan->add_option("--source", plan_cfg.sources, "Source cell x,y")->required();
    plan->add_option("--goal", plan_goal, "Goal cell x,y")->required();
    plan->add_option("--out-path", plan_out_path, "Path CSV output ('-' = stdout)");
    plan->callback([&] {
        const auto sources = parse_cells(plan_cfg.sources);
        if (sources.size() != 1) throw std::invalid_argument("plan: exactly one --source required");
        const auto grid = load_map(plan_cfg.map);
        const auto t0 = std::chrono::steady_clock::now();
        const auto result =
            vbm::vstar(grid, sources.front(), parse_cell(plan_goal), make_options(plan_cfg));
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (!result.reachable) {
            std::cerr << "unreachable goal\n";
            exit_code = 2;
            return;
        }
        write_file(plan_out_path.empty() ? "-" : plan_out_path, vbm::path_csv(result.path));
        char summary[128];
        std::snprintf(summary, sizeof(summary), "# length=%.9g popped=%zu time_ms=%.3f\n",
                      result.length, result.popped_count, ms);
        std::cout << summary;
    });

    // ---- oracle ----
    CommonConfig oracle_cfg;
    std::string oracle_goal, oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Brute-force visibility-graph reference");
    add_map_options(oracle, oracle_cfg.map);
    oracle->add_option("--metric", oracle_cfg.metric, "Distance metric")->default_val("euclidean");
    oracle->add_option("--source", oracle_cfg.sources, "Source cell x,y")->required();
    oracle->add_option("--goal", oracle_goal, "Also report oracle and A* lengths to this goal");
    oracle->add_option("--out-dist", oracle_out, "Distance field CSV ('-' = stdout)");
    oracle->callback([&] {
        const auto sources = parse_cells(oracle_cfg.sources);
        if (sources.size() != 1)
            throw std::invalid_argument("oracle: exactly one --source required");
        const auto grid = load_map(oracle_cfg.map);
        const auto metric = vbm::parse_metric(oracle_cfg.metric);
        const auto dist = vbm::oracle_one_to_all(grid, sources.front(), metric);
        if (!oracle_goal.empty()) {
            const auto goal = parse_cell(oracle_goal);
            if (!grid.in_bounds(goal)) throw std::invalid_argument("oracle: goal out of bounds");
            const auto grid_len = vbm::astar8(grid, sources.front(), goal);
            char line[160];
            const double d = dist[static_cast<std::size_t>(grid.index(goal))];
            if (grid_len)
                std::snprintf(line, sizeof(line), "%d,%d,%.9g,%.9g\n", goal.x, goal.y, d,
                              *grid_len);
            else
                std::snprintf(line, sizeof(line), "%d,%d,%.9g,unreachable\n", goal.x, goal.y, d);
            std::cout << "# goal_x,goal_y,oracle_px,astar8_px\n" << line;
        }
        if (!oracle_out.empty() || oracle_goal.empty()) {
            std::string csv;
            for (int y = 0; y < grid.height(); ++y) {
                for (int x = 0; x < grid.width(); ++x) {
                    if (x) csv += ',';
                    char buf[40];
                    std::snprintf(buf, sizeof(buf), "%.17g",
                                  dist[static_cast<std::size_t>(y) * grid.width() + x]);
                    csv += buf;
                }
                csv += '\n';
            }
            write_file(oracle_out.empty() ? "-" : oracle_out, csv);
        }
    });

    // ---- bench ----
    CommonConfig bench_cfg;
    std::vector<int> bench_sizes{100, 200, 400, 800, 1200};
    int bench_reps = 5;
    std::vector<std::string> bench_goals;
    std::string bench_goals_file, bench_out;
    auto* bench = app.add_subcommand(
        "bench", "Scaling over empty grids, or a one-march path set when --map is given");
    add_map_options(bench, bench_cfg.map, /*required=*/false);
    add_march_options(bench, bench_cfg);
    bench->add_option("--source", bench_cfg.sources, "Path-set source x,y");
    bench->add_option("--goal", bench_goals, "Path-set goal x,y (repeatable)");
    bench->add_option("--goals-file", bench_goals_file,
                      "CSV of path-set goals, one x,y per line ('#' comments)");
    bench->add_option("--sizes", bench_sizes, "Scaling grid side lengths")->delimiter(',');
    bench->add_option("--reps", bench_reps, "Repetitions per size")->default_val(5);
    bench->add_option("--out", bench_out, "Report output ('-' = stdout)");
    bench->callback([&] {
        const auto metric = vbm::parse_metric(bench_cfg.metric);
        const auto backend = parse_backend(bench_cfg.visibility);
        std::string csv;
        if (bench_cfg.map.path.empty()) {
            csv = vbm::scaling_csv(vbm::run_scaling(bench_sizes, bench_reps, metric, backend));
        } else {
            const auto sources = parse_cells(bench_cfg.sources);
            if (sources.size() != 1)
                throw std::invalid_argument("bench: exactly one --source required with --map");
            auto goals = parse_cells(bench_goals);
            if (!bench_goals_file.empty()) {
                std::ifstream in(bench_goals_file);
                if (!in)
                    throw std::runtime_error("cannot open goals file '" + bench_goals_file + "'");
                std::string line;
                while (std::getline(in, line)) {
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (line.empty() || line[0] == '#') continue;
                    goals.push_back(parse_cell(line));
                }
            }
            if (goals.empty()) throw std::invalid_argument("bench: no goals given");
            const auto grid = load_map(bench_cfg.map);
            csv = vbm::pathset_csv(vbm::run_pathset(grid, sources.front(), goals, metric, backend));
        }
        write_file(bench_out.empty() ? "-" : bench_out, csv);
    });

    // ---- render ----
    CommonConfig render_cfg;
    std::string render_mode = "distance", render_out;
    std::vector<std::string> render_goals;
    double render_contours = 0.0;
    auto* render = app.add_subcommand("render", "Distance / parents / path-overlay PPM images");
    add_map_options(render, render_cfg.map);
    add_march_options(render, render_cfg);
    render->add_option("--source", render_cfg.sources, "Source cell x,y (repeatable)")->required();
    render->add_option("--mode", render_mode, "distance|parents|path-overlay")
        ->default_val("distance");
    render->add_option("--goal", render_goals, "Goals for path-overlay mode (repeatable)");
    render->add_option("--contours", render_contours, "Contour interval in pixels (0 = off)")
        ->default_val(0.0);
    render->add_option("--out", render_out, "Output PPM file")->required();
    render->callback([&] {
        const auto grid = load_map(render_cfg.map);
        const auto result =
            vbm::march(grid, parse_cells(render_cfg.sources), make_options(render_cfg));
        vbm::RenderSpec spec;
        spec.contour_interval = render_contours;
        if (render_mode == "distance") {
            spec.mode = vbm::RenderMode::distance;
        } else if (render_mode == "parents") {
            spec.mode = vbm::RenderMode::parents;
        } else if (render_mode == "path-overlay" || render_mode == "path") {
            spec.mode = vbm::RenderMode::path_overlay;
            if (render_goals.empty())
                throw std::invalid_argument("render: path-overlay mode needs at least one --goal");
            for (const auto& text : render_goals) {
                const auto goal = parse_cell(text);
                if (!grid.in_bounds(goal))
                    throw std::invalid_argument("render: goal out of bounds");
                if (const auto path = vbm::extract_path(result, goal))
                    spec.paths.push_back(*path);
                else
                    std::cerr << "warning: goal " << text << " unreachable, skipped\n";
            }
        } else {
            throw std::invalid_argument("render: unknown mode '" + render_mode + "'");
        }
        write_file(render_out, vbm::render(result, grid, spec));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
