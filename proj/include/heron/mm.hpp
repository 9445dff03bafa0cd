#pragma once

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "heron/problem.hpp"

namespace heron {

/// Solve at one fixed perturbation level (eps == 0 gives the unperturbed,
/// possibly singular iteration).
struct FixedEps {
    double value = 0.0;
};

/// Continuation schedule: leg m runs at eps = max(start * decay^(m-1),
/// floor), each leg solved to inner_tol and warm-started from the previous
/// answer; a guarded eps = 0 polish leg runs after the floor leg.
struct PowerLeg {
    double start = 1e-1;
    double decay = 1e-1;
    double floor = 1e-16;
    double inner_tol = 1e-10;
};

using EpsilonSchedule = std::variant<FixedEps, PowerLeg>;

enum class SolveStatus { Converged, MaxIterations, SingularWeight };

const char* to_string(SolveStatus status);

struct SolverConfig {
    /// Cap on the 1-based iterate index (iterate 1 is the starting point,
    /// so at most max_iterations - 1 update steps run).
    int max_iterations = 10000;
    /// Stop when the sup-norm step ||x_{m+1} - x_m||_inf falls below this.
    double step_tolerance = 1e-10;
    EpsilonSchedule schedule = PowerLeg{};
    bool record_trajectory = false;
};

struct TrajectoryRecord {
    int iteration;         // 1-based; 1 = starting point
    Vector x;
    double eps;            // eps used for the step that produced x
    double objective;      // D(x)
    double objective_eps;  // D_eps(x)
    double step_norm;      // ||x - x_prev||_inf; 0 for the first record
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
};

struct SolveResult {
    Vector x;
    SolveStatus status;
    int iterations;  // final 1-based iterate index
    std::optional<Trajectory> trajectory;
};

/// Thrown by mm_step when eps == 0 and some iterate sits on a target set,
/// where the update weights would divide by zero. The solve loops convert
/// it into SolveStatus::SingularWeight.
class SingularWeightError : public std::runtime_error {
public:
    explicit SingularWeightError(Index target_index)
        : std::runtime_error("mm_step: eps = 0 and the iterate lies on target " +
                             std::to_string(target_index + 1) +
                             "; the update weight would divide by zero"),
          target_index_(target_index) {}
    Index target_index() const { return target_index_; }

private:
    Index target_index_;
};

/// One update: project x onto every target, form the convex combination
/// with weights w_i = weight_i / sqrt(d(x, C_i)^2 + eps), and project the
/// result onto the constraint set. Guarantees D_eps does not increase.
Vector mm_step(const HeronProblem& p, const Vector& x, double eps);

/// Iterate mm_step at fixed eps from P_S(x0) until the sup-norm step falls
/// below cfg.step_tolerance or the iterate budget runs out.
SolveResult mm_solve_fixed_eps(const HeronProblem& p, const Vector& x0, double eps,
                               const SolverConfig& cfg);

/// Continuation driver; requires cfg.schedule to be PowerLeg. Runs the leg
/// sequence down to the floor, then a final eps = 0 leg at
/// cfg.step_tolerance: if that leg hits a singular weight the floor-leg
/// answer is returned with status Converged. The iterate index is
/// cumulative across legs.
SolveResult mm_solve_continuation(const HeronProblem& p, const Vector& x0,
                                  const SolverConfig& cfg);

/// Dispatch on cfg.schedule: FixedEps -> mm_solve_fixed_eps,
/// PowerLeg -> mm_solve_continuation.
SolveResult mm_solve(const HeronProblem& p, const Vector& x0, const SolverConfig& cfg);

namespace detail {
/// Allocation-free core of mm_step; `proj` and `combo` are scratch buffers.
void mm_step_into(const HeronProblem& p, const Vector& x, double eps, Vector& out,
                  Vector& proj, Vector& combo);
void validate_config(const SolverConfig& cfg);
void check_solvable(const HeronProblem& p, const Vector& x0, const char* op);
}  // namespace detail

}  // namespace heron
