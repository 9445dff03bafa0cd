#include <doctest.h>

#include <cmath>
#include <map>

#include "heron/catalog.hpp"
#include "heron/subgradient.hpp"
#include "test_helpers.hpp"

using namespace heron;
using heron::testing::make_vec;

namespace {

const TrajectoryRecord& record_at(const Trajectory& trajectory, int iteration) {
    for (const TrajectoryRecord& r : trajectory.records) {
        if (r.iteration == iteration) return r;
    }
    FAIL("no trajectory record for iteration " << iteration);
    return trajectory.records.front();
}

SolverConfig budget_config(int max_iterations) {
    SolverConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.record_trajectory = true;
    return cfg;
}

}  // namespace

TEST_CASE("a point inside every target is a fixed point") {
    const HeronProblem p(ConvexSet::whole_space(2),
                         {TargetTerm{ConvexSet::ball(make_vec({0, 0}), 2.0), 1.0},
                          TargetTerm{ConvexSet::box(make_vec({-1, -1}), make_vec({1, 1})), 3.0}});
    const Vector x = make_vec({0.5, -0.5});
    CHECK(subgradient_step(p, x, 1.0) == x);
}

TEST_CASE("harmonic-step run reproduces the cubes-ball table") {
    const CatalogEntry& entry = builtin_example("cubes-ball");
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0}, budget_config(1000000));

    CHECK(result.status == SolveStatus::MaxIterations);  // budget-driven by design
    CHECK(result.iterations == 1000000);

    const std::map<int, Vector> table = {
        {1, make_vec({0.00000000000000, 2.00000000000000, 0.00000000000000})},
        {10, make_vec({-0.92583298353433, 1.63051788239768, 0.07947484741743})},
        {100, make_vec({-0.92531325048300, 1.62908232435160, 0.07883822912883})},
        {1000, make_vec({-0.92530767419684, 1.62906766065418, 0.07883468589312})},
        {10000, make_vec({-0.92530761758555, 1.62906751554109, 0.07883466757273})},
        {100000, make_vec({-0.92530761701755, 1.62906751410641, 0.07883466748904})},
        {1000000, make_vec({-0.92530761701233, 1.62906751409334, 0.07883466748881})},
    };
    for (const auto& [iteration, expected] : table) {
        const TrajectoryRecord& r = record_at(*result.trajectory, iteration);
        const double tol = iteration <= 10 ? 1e-11 : 1e-9;
        CHECK((r.x - expected).lpNorm<Eigen::Infinity>() <= tol);
    }
}

TEST_CASE("three-disk subgradient checkpoints") {
    const CatalogEntry& entry = builtin_example("three-disks");
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0}, budget_config(100));
    CHECK((record_at(*result.trajectory, 10).x - make_vec({0.7092649, 1.2369866}))
              .lpNorm<Eigen::Infinity>() <= 1e-6);
    CHECK((record_at(*result.trajectory, 100).x - make_vec({0.0558764, 0.9973310}))
              .lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("four-point instance subgradient checkpoint") {
    const CatalogEntry& entry = builtin_example("kuhn");
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0}, budget_config(10));
    CHECK((result.x - make_vec({8.6984831, 0.0})).lpNorm<Eigen::Infinity>() <= 1e-6);
    // the whole trajectory stays on the symmetry axis
    for (const TrajectoryRecord& r : result.trajectory->records) {
        CHECK(std::abs(r.x[1]) <= 1e-12);
    }
}

TEST_CASE("collinear instance lands on the segment") {
    // the golden table for this instance is not reproducible from its
    // stated geometry (its decay exponents match disks centered at (+-3,0));
    // these values pin the actual run, cross-checked against an independent
    // implementation of the same update
    const CatalogEntry& entry = builtin_example("collinear-disks");
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0}, budget_config(10000));
    CHECK(result.x[0] == doctest::Approx(0.97440870).epsilon(1e-7));
    CHECK(std::abs(result.x[1]) <= 1e-4);
    CHECK(entry.problem.objective(result.x) == doctest::Approx(2.0).epsilon(1e-8));

    // best objective so far is non-increasing at the decade checkpoints
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_at;
    for (const TrajectoryRecord& r : result.trajectory->records) {
        best = std::min(best, r.objective);
        if (r.iteration == 100 || r.iteration == 1000 || r.iteration == 10000) {
            best_at.push_back(best);
        }
    }
    REQUIRE(best_at.size() == 3);
    CHECK(best_at[1] <= best_at[0]);
    CHECK(best_at[2] <= best_at[1]);
}

TEST_CASE("iterates stay feasible") {
    const CatalogEntry& entry = builtin_example("collinear-disks");
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0}, budget_config(500));
    for (const TrajectoryRecord& r : result.trajectory->records) {
        CHECK(distance(entry.problem.constraint(), r.x) <= 1e-12);
    }
}

TEST_CASE("symmetry is preserved from an axis start") {
    const CatalogEntry& entry = builtin_example("three-disks");
    const SolveResult result =
        subgradient_solve(entry.problem, make_vec({0, 7}), HarmonicStep{1.0},
                          budget_config(2000));
    for (const TrajectoryRecord& r : result.trajectory->records) {
        CHECK(std::abs(r.x[0]) <= 1e-12);
    }
}

TEST_CASE("checkpoint recording is sparse but keeps the table rows") {
    const CatalogEntry& entry = builtin_example("three-disks");
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0},
                          budget_config(200000));
    const auto& records = result.trajectory->records;
    CHECK(records.size() < 600);  // bounded memory
    CHECK(records.front().iteration == 1);
    CHECK(records.back().iteration == 200000);
    for (size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].iteration > records[i - 1].iteration);
    }
    for (int required : {2, 10, 100, 1000, 10000, 100000, 150000}) {
        record_at(*result.trajectory, required);
    }
}

TEST_CASE("optional step-norm stopping") {
    const CatalogEntry& entry = builtin_example("cubes-ball");
    const SolveResult result = subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0},
                                                 budget_config(1000000), 1e-10);
    CHECK(result.status == SolveStatus::Converged);
    CHECK(result.iterations < 1000000);
}

TEST_CASE("custom step lists bound the run") {
    const CatalogEntry& entry = builtin_example("kuhn");
    const CustomSteps rule{{1.0, 0.5, 1.0 / 3.0}};
    const SolveResult result =
        subgradient_solve(entry.problem, entry.start, rule, budget_config(1000));
    CHECK(result.iterations == 4);  // start + three steps

    // identical to the harmonic rule over the same prefix
    const SolveResult harmonic =
        subgradient_solve(entry.problem, entry.start, HarmonicStep{1.0}, budget_config(4));
    CHECK(result.x == harmonic.x);

    CHECK_THROWS_AS(
        subgradient_solve(entry.problem, entry.start, CustomSteps{{}}, budget_config(10)),
        std::invalid_argument);
    CHECK_THROWS_AS(subgradient_solve(entry.problem, entry.start, CustomSteps{{1.0, -1.0}},
                                      budget_config(10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(subgradient_solve(entry.problem, entry.start, HarmonicStep{0.0},
                                      budget_config(10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(subgradient_step(entry.problem, entry.start, 0.0), std::invalid_argument);
}
