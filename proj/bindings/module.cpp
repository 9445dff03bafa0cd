#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heron/catalog.hpp"
#include "heron/diagnostics.hpp"
#include "heron/problem_io.hpp"

namespace py = pybind11;
using namespace heron;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted sums of Euclidean distances to convex sets: "
              "majorization-minimization and projected-subgradient solvers";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SingularWeightError>(m, "SingularWeightError", PyExc_RuntimeError);

    py::class_<ConvexSet>(m, "ConvexSet")
        .def_static("singleton", &ConvexSet::singleton, py::arg("point"))
        .def_static("ball", &ConvexSet::ball, py::arg("center"), py::arg("radius"))
        .def_static("box", &ConvexSet::box, py::arg("lower"), py::arg("upper"))
        .def_static("halfspace", &ConvexSet::halfspace, py::arg("normal"), py::arg("offset"))
        .def_static("hyperplane", &ConvexSet::hyperplane, py::arg("normal"), py::arg("offset"))
        .def_static("simplex", &ConvexSet::simplex, py::arg("dim"), py::arg("scale"))
        .def_static("l1_ball", &ConvexSet::l1_ball, py::arg("center"), py::arg("radius"))
        .def_static("whole_space", &ConvexSet::whole_space, py::arg("dim"))
        .def_property_readonly("dim", &ConvexSet::dim)
        .def_property_readonly("bounded", &ConvexSet::bounded)
        .def_property_readonly("kind", &ConvexSet::kind_name)
        .def("__repr__", [](const ConvexSet& s) {
            return std::string("ConvexSet(") + s.kind_name() + ", dim=" +
                   std::to_string(s.dim()) + ")";
        });

    m.def("project", &project, py::arg("set"), py::arg("x"),
          "Nearest point of the set to x.");
    m.def("distance", &distance, py::arg("set"), py::arg("x"),
          "Euclidean distance from x to the set.");
    m.def("contains", &contains, py::arg("set"), py::arg("x"), py::arg("tol") = 0.0,
          "distance(set, x) <= tol");
    m.def("project_simplex", &project_simplex, py::arg("x"), py::arg("scale"),
          "Sort-and-threshold projection onto the scaled standard simplex.");

    py::class_<TargetTerm>(m, "TargetTerm")
        .def(py::init<ConvexSet, double>(), py::arg("set"), py::arg("weight") = 1.0)
        .def_readonly("set", &TargetTerm::set)
        .def_readonly("weight", &TargetTerm::weight);

    py::class_<HeronProblem>(m, "HeronProblem")
        .def(py::init<ConvexSet, std::vector<TargetTerm>>(), py::arg("constraint"),
             py::arg("targets"))
        .def(py::init([](ConvexSet constraint, const std::vector<std::pair<ConvexSet, double>>& targets) {
                 std::vector<TargetTerm> terms;
                 terms.reserve(targets.size());
                 for (const auto& [set, weight] : targets) terms.push_back(TargetTerm{set, weight});
                 return HeronProblem(std::move(constraint), std::move(terms));
             }),
             py::arg("constraint"), py::arg("targets"))
        .def_property_readonly("dim", &HeronProblem::dim)
        .def_property_readonly("constraint", &HeronProblem::constraint)
        .def_property_readonly("targets", &HeronProblem::targets)
        .def_property_readonly("coercive", &HeronProblem::coercive)
        .def_property_readonly("weight_sum", &HeronProblem::weight_sum)
        .def("objective", &HeronProblem::objective, py::arg("x"))
        .def("objective_eps", &HeronProblem::objective_eps, py::arg("x"), py::arg("eps"))
        .def("gradient_eps", &HeronProblem::gradient_eps, py::arg("x"), py::arg("eps"));

    py::class_<FixedEps>(m, "FixedEps")
        .def(py::init<double>(), py::arg("value") = 0.0)
        .def_readwrite("value", &FixedEps::value);

    py::class_<PowerLeg>(m, "PowerLeg")
        .def(py::init<double, double, double, double>(), py::arg("start") = 1e-1,
             py::arg("decay") = 1e-1, py::arg("floor") = 1e-16, py::arg("inner_tol") = 1e-10)
        .def_readwrite("start", &PowerLeg::start)
        .def_readwrite("decay", &PowerLeg::decay)
        .def_readwrite("floor", &PowerLeg::floor)
        .def_readwrite("inner_tol", &PowerLeg::inner_tol);

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("Converged", SolveStatus::Converged)
        .value("MaxIterations", SolveStatus::MaxIterations)
        .value("SingularWeight", SolveStatus::SingularWeight);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](int max_iterations, double step_tolerance, EpsilonSchedule schedule,
                         bool record_trajectory) {
                 return SolverConfig{max_iterations, step_tolerance, std::move(schedule),
                                     record_trajectory};
             }),
             py::arg("max_iterations") = 10000, py::arg("step_tolerance") = 1e-10,
             py::arg("schedule") = EpsilonSchedule{PowerLeg{}},
             py::arg("record_trajectory") = false)
        .def_readwrite("max_iterations", &SolverConfig::max_iterations)
        .def_readwrite("step_tolerance", &SolverConfig::step_tolerance)
        .def_readwrite("schedule", &SolverConfig::schedule)
        .def_readwrite("record_trajectory", &SolverConfig::record_trajectory);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_readonly("iteration", &TrajectoryRecord::iteration)
        .def_readonly("x", &TrajectoryRecord::x)
        .def_readonly("eps", &TrajectoryRecord::eps)
        .def_readonly("objective", &TrajectoryRecord::objective)
        .def_readonly("objective_eps", &TrajectoryRecord::objective_eps)
        .def_readonly("step_norm", &TrajectoryRecord::step_norm);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("records", &Trajectory::records)
        .def("__len__", [](const Trajectory& t) { return t.records.size(); });

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("x", &SolveResult::x)
        .def_readonly("status", &SolveResult::status)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("trajectory", &SolveResult::trajectory)
        .def("__repr__", [](const SolveResult& r) {
            return std::string("SolveResult(status=") + to_string(r.status) +
                   ", iterations=" + std::to_string(r.iterations) + ")";
        });

    m.def("mm_step", &mm_step, py::arg("problem"), py::arg("x"), py::arg("eps"),
          "One majorization-minimization update.");
    m.def("mm_solve_fixed_eps", &mm_solve_fixed_eps, py::arg("problem"), py::arg("x0"),
          py::arg("eps"), py::arg("config") = SolverConfig{});
    m.def("mm_solve_continuation", &mm_solve_continuation, py::arg("problem"), py::arg("x0"),
          py::arg("config") = SolverConfig{});
    m.def("mm_solve", &mm_solve, py::arg("problem"), py::arg("x0"),
          py::arg("config") = SolverConfig{});

    py::class_<HarmonicStep>(m, "HarmonicStep")
        .def(py::init<double>(), py::arg("scale") = 1.0)
        .def_readwrite("scale", &HarmonicStep::scale);

    py::class_<CustomSteps>(m, "CustomSteps")
        .def(py::init<std::vector<double>>(), py::arg("steps"))
        .def_readwrite("steps", &CustomSteps::steps);

    m.def("subgradient_step", &subgradient_step, py::arg("problem"), py::arg("x"),
          py::arg("eta"));
    m.def("subgradient_solve", &subgradient_solve, py::arg("problem"), py::arg("x0"),
          py::arg("rule") = StepSizeRule{HarmonicStep{}}, py::arg("config") = SolverConfig{},
          py::arg("stop_step_norm") = std::nullopt);

    py::class_<OptimalityReport>(m, "OptimalityReport")
        .def_readonly("residual", &OptimalityReport::residual)
        .def_readonly("eps_used", &OptimalityReport::eps_used)
        .def_readonly("probe_step", &OptimalityReport::probe_step)
        .def_readonly("tolerance", &OptimalityReport::tolerance)
        .def_readonly("certified", &OptimalityReport::certified);

    m.def("optimality_residual", &optimality_residual, py::arg("problem"), py::arg("x"),
          py::arg("eps"), py::arg("probe_step") = 1.0, py::arg("tolerance") = 1e-6);
    m.def("finite_difference_gradient", &finite_difference_gradient, py::arg("problem"),
          py::arg("x"), py::arg("eps"), py::arg("h") = 1e-6);
    m.def(
        "grid_search_oracle",
        [](const HeronProblem& p, const Vector& lower, const Vector& upper, int resolution) {
            const GridSearchResult r = grid_search_oracle(p, lower, upper, resolution);
            return py::make_tuple(r.minimizer, r.objective);
        },
        py::arg("problem"), py::arg("box_lower"), py::arg("box_upper"),
        py::arg("resolution") = 601, "Exhaustive grid minimizer; returns (point, objective).");

    py::class_<CatalogEntry>(m, "CatalogEntry")
        .def_readonly("name", &CatalogEntry::name)
        .def_readonly("title", &CatalogEntry::title)
        .def_readonly("problem", &CatalogEntry::problem)
        .def_readonly("start", &CatalogEntry::start);

    m.def("builtin_examples", &builtin_examples, py::return_value_policy::reference,
          "The built-in experiment instances.");
    m.def("builtin_example", &builtin_example, py::arg("name"),
          py::return_value_policy::reference);

    py::class_<SolverSettings> solver_settings(m, "SolverSettings");
    py::enum_<SolverSettings::Method>(solver_settings, "Method")
        .value("Mm", SolverSettings::Method::Mm)
        .value("Subgradient", SolverSettings::Method::Subgradient);
    solver_settings.def(py::init<>())
        .def_readwrite("method", &SolverSettings::method)
        .def_readwrite("start", &SolverSettings::start)
        .def_readwrite("eps_start", &SolverSettings::eps_start)
        .def_readwrite("eps_decay", &SolverSettings::eps_decay)
        .def_readwrite("eps_floor", &SolverSettings::eps_floor)
        .def_readwrite("inner_tol", &SolverSettings::inner_tol)
        .def_readwrite("tolerance", &SolverSettings::tolerance)
        .def_readwrite("step_scale", &SolverSettings::step_scale)
        .def_readwrite("max_iterations", &SolverSettings::max_iterations)
        .def_readwrite("record_trajectory", &SolverSettings::record_trajectory);

    py::class_<ParsedProblem>(m, "ParsedProblem")
        .def_readonly("problem", &ParsedProblem::problem)
        .def_readonly("solver", &ParsedProblem::solver);

    m.def("parse_problem", &parse_problem, py::arg("text"),
          "Parse a 'heron-problem v1' document.");
    m.def("parse_problem_file", &parse_problem_file, py::arg("path"));
    m.def("serialize_problem", &serialize_problem, py::arg("problem"),
          py::arg("solver") = std::nullopt);
    m.def("run_solver", &run_solver, py::arg("problem"), py::arg("start"), py::arg("settings"));
    m.def("write_trajectory_csv", &write_trajectory_csv_file, py::arg("path"),
          py::arg("trajectory"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
