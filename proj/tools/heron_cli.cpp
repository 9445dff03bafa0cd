// heron: generalized Heron problem solver
//
// Subcommands:
//   solve <file>     solve a problem document
//   example <name>   run a built-in experiment instance
//   check <file>     optimality certificate at a given point
//   oracle <file>    exhaustive grid search (d <= 3)
//
// Exit codes: 0 converged, 1 input error, 2 iteration budget exhausted,
// 3 singular weight at eps = 0.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "heron/catalog.hpp"
#include "heron/diagnostics.hpp"
#include "heron/problem_io.hpp"

namespace {

using heron::Vector;

Vector parse_coords(const std::string& text, const char* what) {
    std::vector<double> values;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        try {
            values.push_back(std::stod(text.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + ": malformed coordinate list '" + text +
                                     "'");
        }
        pos = comma + 1;
    }
    Vector v(static_cast<heron::Index>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) v[static_cast<heron::Index>(i)] = values[i];
    return v;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.14g", v);
    return buf;
}

std::string fmt(const Vector& v) {
    std::string out;
    for (heron::Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ' ';
        out += fmt(v[i]);
    }
    return out;
}

struct SolveFlags {
    std::string method;
    std::string start;
    std::string trajectory_path;
    std::optional<double> eps_start, eps_decay, eps_floor, inner_tol, tol, step_scale;
    std::optional<int> max_iter;

    void attach(CLI::App* cmd) {
        cmd->add_option("--method", method, "mm or subgrad")
            ->check(CLI::IsMember({"mm", "subgrad", "subgradient"}));
        cmd->add_option("--start", start, "starting point x,y,...");
        cmd->add_option("--eps-start", eps_start, "first continuation leg (0 = unperturbed)");
        cmd->add_option("--eps-decay", eps_decay, "per-leg decay factor in (0,1)");
        cmd->add_option("--eps-floor", eps_floor, "smallest positive leg");
        cmd->add_option("--inner-tol", inner_tol, "per-leg step tolerance");
        cmd->add_option("--max-iter", max_iter, "iterate budget");
        cmd->add_option("--tol", tol, "final step tolerance");
        cmd->add_option("--step-scale", step_scale, "subgradient step scale (eta = scale/m)");
        cmd->add_option("--trajectory", trajectory_path, "write iterates to a CSV file");
    }

    // merge flags over document settings; flags win
    heron::SolverSettings merge(std::optional<heron::SolverSettings> doc) const {
        heron::SolverSettings s = doc.value_or(heron::SolverSettings{});
        if (method == "mm") s.method = heron::SolverSettings::Method::Mm;
        if (method == "subgrad" || method == "subgradient") {
            s.method = heron::SolverSettings::Method::Subgradient;
        }
        if (!start.empty()) s.start = parse_coords(start, "--start");
        if (eps_start) s.eps_start = eps_start;
        if (eps_decay) s.eps_decay = eps_decay;
        if (eps_floor) s.eps_floor = eps_floor;
        if (inner_tol) s.inner_tol = inner_tol;
        if (tol) s.tolerance = tol;
        if (step_scale) s.step_scale = step_scale;
        if (max_iter) s.max_iterations = max_iter;
        if (!trajectory_path.empty()) s.record_trajectory = true;
        return s;
    }
};

int run_and_report(const heron::HeronProblem& problem, const heron::SolverSettings& settings,
                   const Vector& fallback_start, const std::string& trajectory_path,
                   const std::string& label) {
    const Vector start = settings.start.value_or(fallback_start);
    const heron::SolveResult result = heron::run_solver(problem, start, settings);

    if (!label.empty()) std::cout << "instance     " << label << '\n';
    std::cout << "method       "
              << (settings.method == heron::SolverSettings::Method::Mm ? "mm" : "subgradient")
              << '\n';
    std::cout << "status       " << heron::to_string(result.status) << '\n';
    std::cout << "iterations   " << result.iterations << '\n';
    std::cout << "point        " << fmt(result.x) << '\n';
    std::cout << "objective    " << fmt(problem.objective(result.x)) << '\n';

    if (!trajectory_path.empty()) {
        if (result.trajectory) {
            heron::write_trajectory_csv_file(trajectory_path, *result.trajectory);
            std::cout << "trajectory   " << trajectory_path << " ("
                      << result.trajectory->records.size() << " rows)\n";
        }
    }

    switch (result.status) {
        case heron::SolveStatus::Converged: return 0;
        case heron::SolveStatus::MaxIterations: return 2;
        case heron::SolveStatus::SingularWeight: return 3;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Heron problem solver"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve a problem document");
    std::string solve_file;
    solve_cmd->add_option("file", solve_file, "problem document")->required();
    SolveFlags solve_flags;
    solve_flags.attach(solve_cmd);

    // example
    auto* example_cmd = app.add_subcommand("example", "run a built-in instance");
    std::string example_name;
    bool example_all = false;
    example_cmd->add_option("name", example_name,
                            "cubes-ball, three-disks, collinear-disks or kuhn");
    example_cmd->add_flag("--all", example_all, "run every built-in instance");
    SolveFlags example_flags;
    example_flags.attach(example_cmd);

    // check
    auto* check_cmd = app.add_subcommand("check", "optimality certificate at a point");
    std::string check_file, check_point;
    double check_eps = 1e-12, check_probe = 1.0, check_tol = 1e-6;
    check_cmd->add_option("file", check_file, "problem document")->required();
    check_cmd->add_option("--point", check_point, "feasible point x,y,...")->required();
    check_cmd->add_option("--eps", check_eps, "smoothing level (default 1e-12)");
    check_cmd->add_option("--probe-step", check_probe, "probe step (default 1)");
    check_cmd->add_option("--tol", check_tol, "certification threshold (default 1e-6)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive grid search (d <= 3)");
    std::string oracle_file, oracle_box;
    int oracle_resolution = 601;
    oracle_cmd->add_option("file", oracle_file, "problem document")->required();
    oracle_cmd
        ->add_option("--box", oracle_box,
                     "search box lo1,..,lod,hi1,..,hid (2d comma-separated values)")
        ->required();
    oracle_cmd->add_option("--resolution", oracle_resolution,
                           "grid points per axis (default 601)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            heron::ParsedProblem doc = heron::parse_problem_file(solve_file);
            const heron::SolverSettings settings = solve_flags.merge(doc.solver);
            const Vector fallback = Vector::Zero(doc.problem.dim());
            return run_and_report(doc.problem, settings, fallback,
                                  solve_flags.trajectory_path, "");
        }

        if (example_cmd->parsed()) {
            if (!example_all && example_name.empty()) {
                std::cerr << "error: give an example name or --all\n";
                return 1;
            }
            int worst = 0;
            if (example_all) {
                for (const heron::CatalogEntry& entry : heron::builtin_examples()) {
                    const heron::SolverSettings settings = example_flags.merge(std::nullopt);
                    worst = std::max(worst, run_and_report(entry.problem, settings, entry.start,
                                                           "", entry.name));
                    std::cout << '\n';
                }
                return worst;
            }
            const heron::CatalogEntry& entry = heron::builtin_example(example_name);
            const heron::SolverSettings settings = example_flags.merge(std::nullopt);
            return run_and_report(entry.problem, settings, entry.start,
                                  example_flags.trajectory_path, entry.name);
        }

        if (check_cmd->parsed()) {
            heron::ParsedProblem doc = heron::parse_problem_file(check_file);
            const Vector point = parse_coords(check_point, "--point");
            const heron::OptimalityReport report =
                heron::optimality_residual(doc.problem, point, check_eps, check_probe, check_tol);
            std::cout << "point        " << fmt(point) << '\n';
            std::cout << "objective    " << fmt(doc.problem.objective(point)) << '\n';
            std::cout << "residual     " << fmt(report.residual) << '\n';
            std::cout << "eps          " << fmt(report.eps_used) << '\n';
            std::cout << "probe-step   " << fmt(report.probe_step) << '\n';
            std::cout << "tolerance    " << fmt(report.tolerance) << '\n';
            std::cout << "certified    " << (report.certified ? "true" : "false") << '\n';
            return 0;
        }

        if (oracle_cmd->parsed()) {
            heron::ParsedProblem doc = heron::parse_problem_file(oracle_file);
            const Vector box = parse_coords(oracle_box, "--box");
            const heron::Index d = doc.problem.dim();
            if (box.size() != 2 * d) {
                throw std::runtime_error("--box needs " + std::to_string(2 * d) +
                                         " values for a problem in dimension " +
                                         std::to_string(d));
            }
            const heron::GridSearchResult result = heron::grid_search_oracle(
                doc.problem, box.head(d), box.tail(d), oracle_resolution);
            std::cout << "minimizer    " << fmt(result.minimizer) << '\n';
            std::cout << "objective    " << fmt(result.objective) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
