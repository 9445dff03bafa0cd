#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "heron/catalog.hpp"
#include "heron/problem_io.hpp"
#include "test_helpers.hpp"

using namespace heron;
using heron::testing::make_vec;

namespace {

std::string data_file(const char* name) {
    return std::string(HERON_TEST_DATA_DIR) + "/malformed/" + name;
}

std::string problems_file(const char* name) {
    return std::string(HERON_PROBLEMS_DIR) + "/" + name;
}

bool same_sets(const ConvexSet& a, const ConvexSet& b) {
    if (std::string(a.kind_name()) != b.kind_name() || a.dim() != b.dim()) return false;
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 32; ++trial) {
        const Vector x = heron::testing::random_point(rng, a.dim());
        if ((project(a, x) - project(b, x)).lpNorm<Eigen::Infinity>() > 0.0) return false;
    }
    return true;
}

bool same_problem(const HeronProblem& a, const HeronProblem& b) {
    if (a.dim() != b.dim() || a.target_count() != b.target_count()) return false;
    if (!same_sets(a.constraint(), b.constraint())) return false;
    for (Index i = 0; i < a.target_count(); ++i) {
        const auto& ta = a.targets()[static_cast<size_t>(i)];
        const auto& tb = b.targets()[static_cast<size_t>(i)];
        if (ta.weight != tb.weight || !same_sets(ta.set, tb.set)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("the shipped documents parse to the catalog instances") {
    const struct {
        const char* file;
        const char* catalog;
    } pairs[] = {
        {"cubes_ball.heron", "cubes-ball"},
        {"three_disks.heron", "three-disks"},
        {"collinear_disks.heron", "collinear-disks"},
        {"kuhn.heron", "kuhn"},
    };
    for (const auto& [file, catalog] : pairs) {
        const ParsedProblem doc = parse_problem_file(problems_file(file));
        const CatalogEntry& entry = builtin_example(catalog);
        CHECK(same_problem(doc.problem, entry.problem));
        REQUIRE(doc.solver.has_value());
        REQUIRE(doc.solver->start.has_value());
        CHECK(*doc.solver->start == entry.start);
    }

    // the five-cube instance specifically
    const ParsedProblem cubes = parse_problem_file(problems_file("cubes_ball.heron"));
    CHECK(cubes.problem.dim() == 3);
    CHECK(cubes.problem.target_count() == 5);
}

TEST_CASE("catalog sanity") {
    CHECK(builtin_examples().size() == 4);
    const HeronProblem& kuhn = builtin_example("kuhn").problem;
    const std::vector<double> expected_weights{5, 5, 13, 13};
    REQUIRE(kuhn.target_count() == 4);
    for (Index i = 0; i < 4; ++i) {
        CHECK(kuhn.targets()[static_cast<size_t>(i)].weight ==
              expected_weights[static_cast<size_t>(i)]);
    }
    for (const CatalogEntry& entry : builtin_examples()) {
        CHECK(entry.problem.coercive());
        CHECK(entry.start.size() == entry.problem.dim());
    }
    CHECK_THROWS_AS(builtin_example("weber"), std::invalid_argument);
}

TEST_CASE("serialization round-trips and is idempotent") {
    for (const CatalogEntry& entry : builtin_examples()) {
        SolverSettings settings;
        settings.start = entry.start;
        settings.eps_start = 0.1;
        settings.max_iterations = 123;
        const std::string once = serialize_problem(entry.problem, settings);
        const ParsedProblem reparsed = parse_problem(once);
        CHECK(same_problem(reparsed.problem, entry.problem));
        REQUIRE(reparsed.solver.has_value());
        CHECK(*reparsed.solver->start == entry.start);
        CHECK(reparsed.solver->max_iterations == 123);
        const std::string twice = serialize_problem(reparsed.problem, reparsed.solver);
        CHECK(once == twice);
    }

    // doubles survive the text form losslessly
    const HeronProblem p(
        ConvexSet::ball(make_vec({0.1, -1.0 / 3.0}), M_PI),
        {TargetTerm{ConvexSet::singleton(make_vec({1e-17, 123456.789012345678})), 0.7}});
    const ParsedProblem q = parse_problem(serialize_problem(p));
    const auto& ball_in = std::get<Ball>(p.constraint().variant());
    const auto& ball_out = std::get<Ball>(q.problem.constraint().variant());
    CHECK(ball_in.center == ball_out.center);
    CHECK(ball_in.radius == ball_out.radius);
    const auto& point_in = std::get<Singleton>(p.targets()[0].set.variant());
    const auto& point_out = std::get<Singleton>(q.problem.targets()[0].set.variant());
    CHECK(point_in.point == point_out.point);
    CHECK(p.targets()[0].weight == q.problem.targets()[0].weight);
}

TEST_CASE("every malformed fixture yields a positioned diagnostic") {
    const struct {
        const char* file;
        ParseErrorCode code;
    } fixtures[] = {
        {"unknown_kind.heron", ParseErrorCode::UnknownSetKind},
        {"zero_weight.heron", ParseErrorCode::NonpositiveWeight},
        {"bad_number.heron", ParseErrorCode::MalformedNumber},
        {"dim_mismatch.heron", ParseErrorCode::DimensionMismatch},
        {"negative_radius.heron", ParseErrorCode::NonpositiveRadius},
        {"no_header.heron", ParseErrorCode::MissingHeader},
        {"bad_version.heron", ParseErrorCode::UnsupportedVersion},
        {"missing_dimension.heron", ParseErrorCode::MissingDimension},
        {"no_targets.heron", ParseErrorCode::NoTargets},
        {"no_constraint.heron", ParseErrorCode::MissingConstraint},
        {"box_order.heron", ParseErrorCode::BoxBoundsOrder},
        {"zero_normal.heron", ParseErrorCode::ZeroNormal},
        {"unknown_key.heron", ParseErrorCode::UnknownKey},
        {"duplicate_key.heron", ParseErrorCode::DuplicateKey},
        {"missing_key.heron", ParseErrorCode::MissingKey},
        {"bad_method.heron", ParseErrorCode::UnknownMethod},
        {"stray_line.heron", ParseErrorCode::StrayLine},
    };
    for (const auto& [file, code] : fixtures) {
        INFO(file);
        try {
            parse_problem_file(data_file(file));
            FAIL("expected a parse error for " << file);
        } catch (const ParseError& e) {
            CHECK(e.code() == code);
            CHECK(e.line() >= 1);
            CHECK(e.column() >= 1);
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }
}

TEST_CASE("specific error positions") {
    try {
        parse_problem("heron-problem v1\ndimension 2\n\nconstraint wholespace\n\n"
                      "target ball\ncenter 0 2\nradius 1\nweight 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code() == ParseErrorCode::NonpositiveWeight);
        CHECK(e.line() == 9);
        CHECK(e.column() == 1);
    }
}

TEST_CASE("missing files are reported, not crashed on") {
    CHECK_THROWS_AS(parse_problem_file("/nonexistent/path.heron"), std::runtime_error);
}

TEST_CASE("solver settings assemble the schedule") {
    SolverSettings settings;
    SolverConfig cfg = solver_config_from(settings);
    CHECK(std::holds_alternative<PowerLeg>(cfg.schedule));

    settings.eps_start = 0.0;
    cfg = solver_config_from(settings);
    REQUIRE(std::holds_alternative<FixedEps>(cfg.schedule));
    CHECK(std::get<FixedEps>(cfg.schedule).value == 0.0);

    settings.eps_start = 0.5;
    settings.eps_decay = 0.25;
    settings.eps_floor = 1e-12;
    settings.inner_tol = 1e-8;
    settings.tolerance = 1e-13;
    settings.max_iterations = 77;
    cfg = solver_config_from(settings);
    REQUIRE(std::holds_alternative<PowerLeg>(cfg.schedule));
    const PowerLeg& legs = std::get<PowerLeg>(cfg.schedule);
    CHECK(legs.start == 0.5);
    CHECK(legs.decay == 0.25);
    CHECK(legs.floor == 1e-12);
    CHECK(legs.inner_tol == 1e-8);
    CHECK(cfg.step_tolerance == 1e-13);
    CHECK(cfg.max_iterations == 77);
}

TEST_CASE("trajectory csv round-trips bitwise") {
    const CatalogEntry& entry = builtin_example("three-disks");
    SolverConfig cfg;
    cfg.max_iterations = 200;
    cfg.step_tolerance = 1e-10;
    cfg.record_trajectory = true;
    const SolveResult result = mm_solve_continuation(entry.problem, entry.start, cfg);
    REQUIRE(result.trajectory.has_value());

    std::ostringstream out;
    write_trajectory_csv(out, *result.trajectory);
    const std::string text = out.str();

    CHECK(text.rfind("iteration,eps,x1,x2,objective,objective_eps,step_norm\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);  // LF only

    std::istringstream in(text);
    const Trajectory reread = read_trajectory_csv(in);
    REQUIRE(reread.records.size() == result.trajectory->records.size());
    for (size_t i = 0; i < reread.records.size(); ++i) {
        const auto& a = result.trajectory->records[i];
        const auto& b = reread.records[i];
        CHECK(a.iteration == b.iteration);
        CHECK(a.eps == b.eps);
        CHECK(a.x == b.x);
        CHECK(a.objective == b.objective);
        CHECK(a.objective_eps == b.objective_eps);
        CHECK(a.step_norm == b.step_norm);
        // re-evaluating the objective at the stored point reproduces the column
        CHECK(std::abs(entry.problem.objective(b.x) - b.objective) <= 1e-12);
    }

    Trajectory empty;
    CHECK_THROWS_AS(write_trajectory_csv(out, empty), std::invalid_argument);
}
